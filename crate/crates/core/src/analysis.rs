//! Schedule quality measures for the two-machine, two-scenario setting:
//! the proxy competitive ratio, the anticipation of a schedule, and the
//! three-part invariant the 5/3-competitive algorithm maintains.

use crate::state::AssignmentState;
use crate::weight::Weight;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("operation requires m = {expected_m}, K = {expected_k}")]
    WrongShape { expected_m: usize, expected_k: usize },
    #[error("proxy ratio undefined: every job has zero weight")]
    UndefinedRatio,
}

/// Proxy competitive ratio of a complete two-machine schedule:
/// the makespan divided by
/// `max( max_k p(S_k)/2 , max{ p_j : C_j = makespan } )`.
///
/// This upper-bounds the true competitive ratio because both denominator
/// terms lower-bound the offline optimum.
pub fn proxy_ratio(state: &AssignmentState) -> Result<Weight, AnalysisError> {
    if state.m() != 2 {
        return Err(AnalysisError::WrongShape { expected_m: 2, expected_k: state.k() });
    }
    let numerator = state.makespan();
    let mut denom = Weight::zero();
    for k in 0..state.k() {
        let half = state.scenario_total(k).clone() / Weight::from_int(2);
        if half > denom {
            denom = half;
        }
    }
    for j in state.makespan_attaining_jobs() {
        let p = &state.jobs()[j].p;
        if *p > denom {
            denom = p.clone();
        }
    }
    if denom.is_zero() {
        return Err(AnalysisError::UndefinedRatio);
    }
    Ok(numerator / denom)
}

/// Anticipation of an m = K = 2 schedule. `Infinite` occurs when the
/// defining denominator vanishes while the makespan is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Anticipation {
    Finite(Weight),
    Infinite,
}

impl Anticipation {
    pub fn at_most(&self, bound: &Weight) -> bool {
        match self {
            Anticipation::Finite(a) => a <= bound,
            Anticipation::Infinite => false,
        }
    }

    pub fn as_weight(&self) -> Option<&Weight> {
        match self {
            Anticipation::Finite(a) => Some(a),
            Anticipation::Infinite => None,
        }
    }

    /// The bound `(2α+1)/(α+1)` on the proxy ratio after one more
    /// double-scenario job; tends to 2 as α grows.
    pub fn proxy_bound(&self) -> Weight {
        match self {
            Anticipation::Finite(a) => {
                (Weight::from_int(2) * a.clone() + Weight::one())
                    / (a.clone() + Weight::one())
            }
            Anticipation::Infinite => Weight::from_int(2),
        }
    }
}

/// The canonical frame of a 2×2 load table: the (machine, scenario) cell
/// attaining the makespan, ties broken toward the smallest machine index
/// and then the smallest scenario index. All-zero tables map to (0, 0).
pub fn canonical_cell(state: &AssignmentState) -> (usize, usize) {
    debug_assert_eq!(state.m(), 2);
    debug_assert_eq!(state.k(), 2);
    let mut best = (0usize, 0usize);
    let mut best_val = state.load(0, 0).clone();
    for i in 0..2 {
        for k in 0..2 {
            if *state.load(i, k) > best_val {
                best_val = state.load(i, k).clone();
                best = (i, k);
            }
        }
    }
    best
}

fn anticipation_in_frame(state: &AssignmentState, cell: (usize, usize)) -> Anticipation {
    let (i1, k1) = cell;
    let (i2, k2) = (1 - i1, 1 - k1);
    let l11 = state.load(i1, k1);
    let l12 = state.load(i1, k2);
    let l21 = state.load(i2, k1);
    let l22 = state.load(i2, k2);
    if l11.is_zero() && l12.is_zero() && l21.is_zero() && l22.is_zero() {
        // 0/0 convention
        return Anticipation::Finite(Weight::one());
    }
    if l22 <= l21 {
        return Anticipation::Finite(Weight::zero());
    }
    let alt = l21.clone() + l11.clone() - l22.clone();
    let denom = l12.clone().max(alt);
    if denom.is_zero() {
        Anticipation::Infinite
    } else {
        Anticipation::Finite(l11.clone() / denom)
    }
}

/// Anticipation after relabeling machines and scenarios so the makespan is
/// attained at `(J_1, S_1)` (canonical tie-break).
pub fn anticipation(state: &AssignmentState) -> Result<Anticipation, AnalysisError> {
    if state.m() != 2 || state.k() != 2 {
        return Err(AnalysisError::WrongShape { expected_m: 2, expected_k: 2 });
    }
    Ok(anticipation_in_frame(state, canonical_cell(state)))
}

/// A makespan-attaining cell together with the anticipation evaluated in
/// its frame.
pub type RelabeledAnticipation = ((usize, usize), Anticipation);

/// Diagnostic variant: the anticipation under every relabeling whose target
/// cell ties for the makespan; the canonical tie-break is one admissible
/// choice and this exposes the others.
pub fn anticipation_relabelings(
    state: &AssignmentState,
) -> Result<Vec<RelabeledAnticipation>, AnalysisError> {
    if state.m() != 2 || state.k() != 2 {
        return Err(AnalysisError::WrongShape { expected_m: 2, expected_k: 2 });
    }
    let cells = state.loads().makespan_cells();
    if cells.is_empty() {
        return Ok(vec![((0, 0), anticipation_in_frame(state, (0, 0)))]);
    }
    Ok(cells
        .into_iter()
        .map(|c| (c, anticipation_in_frame(state, c)))
        .collect())
}

/// Truth values of the three conditions of the maintained invariant:
/// proxy ratio ≤ 5/3, anticipation ≤ 2, and the machine-dominance bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Invariant1 {
    pub proxy_ok: bool,
    pub anticipation_ok: bool,
    pub dominance_ok: bool,
}

impl Invariant1 {
    pub fn all(&self) -> bool {
        self.proxy_ok && self.anticipation_ok && self.dominance_ok
    }

    pub fn as_tuple(&self) -> (bool, bool, bool) {
        (self.proxy_ok, self.anticipation_ok, self.dominance_ok)
    }
}

/// Evaluate the invariant on the current prefix, treated as a complete
/// schedule. The all-zero schedule satisfies everything vacuously.
pub fn check_invariant1(state: &AssignmentState) -> Result<Invariant1, AnalysisError> {
    if state.m() != 2 || state.k() != 2 {
        return Err(AnalysisError::WrongShape { expected_m: 2, expected_k: 2 });
    }
    let five_thirds = Weight::from_ratio(5, 3);
    let proxy_ok = match proxy_ratio(state) {
        Ok(r) => r <= five_thirds,
        Err(AnalysisError::UndefinedRatio) => true,
        Err(e) => return Err(e),
    };
    let anticipation_ok = anticipation(state)?.at_most(&Weight::from_int(2));
    let dominance_ok = dominance_condition(state);
    Ok(Invariant1 { proxy_ok, anticipation_ok, dominance_ok })
}

/// Condition (iii): whenever the makespan cell `(i, k)` lies on a machine
/// that strictly dominates the other in both scenarios, the dominating
/// machine must stay internally balanced: `p(J_i ∩ S_k) ≤ 2·p(J_i ∩ S_{3-k})`.
fn dominance_condition(state: &AssignmentState) -> bool {
    let two = Weight::from_int(2);
    for (i, k) in state.loads().makespan_cells() {
        let o = 1 - i;
        let dominated = (0..2).all(|k1| {
            (0..2).all(|k2| state.load(i, k1) > state.load(o, k2))
        });
        if dominated {
            let balanced =
                *state.load(i, k) <= two.clone() * state.load(i, 1 - k).clone();
            if !balanced {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Job;

    fn state_with_loads(cells: [[i64; 2]; 2]) -> AssignmentState {
        // One single-scenario job per nonzero cell.
        let mut st = AssignmentState::new(2, 2);
        for (i, row) in cells.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                if v != 0 {
                    st.push(Job::new(Weight::from_int(v), vec![k]), i).unwrap();
                }
            }
        }
        st
    }

    #[test]
    fn proxy_ratio_two_unit_jobs_one_machine() {
        let mut st = AssignmentState::new(2, 2);
        st.push(Job::unit(vec![0]), 0).unwrap();
        st.push(Job::unit(vec![0]), 0).unwrap();
        assert_eq!(proxy_ratio(&st).unwrap(), Weight::from_int(2));
    }

    #[test]
    fn proxy_ratio_single_job_is_one() {
        let mut st = AssignmentState::new(2, 2);
        st.push(Job::unit(vec![0]), 0).unwrap();
        assert_eq!(proxy_ratio(&st).unwrap(), Weight::one());
    }

    #[test]
    fn proxy_ratio_undefined_for_zero_jobs() {
        let mut st = AssignmentState::new(2, 2);
        st.push(Job::new(Weight::zero(), vec![0]), 0).unwrap();
        assert_eq!(proxy_ratio(&st), Err(AnalysisError::UndefinedRatio));
    }

    #[test]
    fn anticipation_of_empty_schedule_is_one() {
        let st = AssignmentState::new(2, 2);
        assert_eq!(
            anticipation(&st).unwrap(),
            Anticipation::Finite(Weight::one())
        );
    }

    #[test]
    fn anticipation_zero_branch() {
        // After relabeling, p(J2∩S2) ≤ p(J2∩S1) yields zero.
        let st = state_with_loads([[4, 2], [3, 1]]);
        assert_eq!(
            anticipation(&st).unwrap(),
            Anticipation::Finite(Weight::zero())
        );
    }

    #[test]
    fn anticipation_worked_example() {
        // Loads 4,2 / 1,3 → 4 / max(2, 1+4-3) = 2.
        let st = state_with_loads([[4, 2], [1, 3]]);
        assert_eq!(
            anticipation(&st).unwrap(),
            Anticipation::Finite(Weight::from_int(2))
        );
    }

    #[test]
    fn anticipation_infinite_when_denominator_vanishes() {
        let st = state_with_loads([[4, 0], [0, 4]]);
        // Tie on the makespan; canonical frame picks (0,0): J2 loads (0,4).
        assert_eq!(anticipation(&st).unwrap(), Anticipation::Infinite);
        assert!(!anticipation(&st).unwrap().at_most(&Weight::from_int(2)));
    }

    #[test]
    fn invariant_empty_schedule_vacuous() {
        let st = AssignmentState::new(2, 2);
        assert_eq!(check_invariant1(&st).unwrap().as_tuple(), (true, true, true));
    }

    #[test]
    fn invariant_dominance_violation() {
        // Loads 5,2 / 1,1: machine 1 dominates and 5 > 2·2.
        let st = state_with_loads([[5, 2], [1, 1]]);
        let inv = check_invariant1(&st).unwrap();
        assert!(!inv.dominance_ok);
    }

    #[test]
    fn relabeling_diagnostics_report_ties() {
        let st = state_with_loads([[4, 0], [0, 4]]);
        let all = anticipation_relabelings(&st).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|(_, a)| *a == Anticipation::Infinite));
    }

    /// With balanced top loads (the post-surgery worst-case shape), one
    /// more double-scenario job can push the proxy ratio to at most
    /// (2a+1)/(a+1) where a is the anticipation beforehand.
    #[test]
    fn anticipation_bounds_the_damage_of_one_double_job() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        let mut tested = 0;
        for _ in 0..20_000 {
            let q = |rng: &mut rand_chacha::ChaCha8Rng| {
                Weight::from_ratio(rng.gen_range(0..=12), rng.gen_range(1..=4))
            };
            let top = Weight::from_ratio(rng.gen_range(1..=12), rng.gen_range(1..=4));
            let l12 = q(&mut rng).min(top.clone());
            let l21 = q(&mut rng).min(top.clone());
            if l21 >= top {
                continue;
            }
            // Balanced: p(J1 ∩ S1) = p(J2 ∩ S2) = top, makespan at (1,1).
            let mut st = AssignmentState::new(2, 2);
            st.push(Job::new(top.clone(), vec![0]), 0).unwrap();
            if !l12.is_zero() {
                st.push(Job::new(l12.clone(), vec![1]), 0).unwrap();
            }
            if !l21.is_zero() {
                st.push(Job::new(l21.clone(), vec![0]), 1).unwrap();
            }
            st.push(Job::new(top.clone(), vec![1]), 1).unwrap();
            let alpha = anticipation(&st).unwrap();
            let bound = alpha.proxy_bound();
            let p_final = q(&mut rng) * Weight::from_int(3);
            for machine in 0..2 {
                let mut trial = st.clone();
                trial.push(Job::new(p_final.clone(), vec![0, 1]), machine).unwrap();
                let rho = proxy_ratio(&trial).unwrap();
                assert!(
                    rho <= bound,
                    "rho {} over bound {} (alpha {:?}, loads {top}/{l12}/{l21})",
                    rho.decimal(6),
                    bound.decimal(6),
                    alpha
                );
            }
            tested += 1;
        }
        assert!(tested > 10_000, "enough balanced prefixes exercised: {tested}");
    }
}
