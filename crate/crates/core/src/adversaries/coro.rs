//! Generator-thread plumbing that turns a recursive adversary body into a
//! resumable [`Adversary`] state machine.
//!
//! The body runs on its own thread and talks to the engine through two
//! rendezvous channels: it sends moves, the engine sends machine choices
//! back. Dropping the handle closes the channels, which unwinds the body at
//! its next yield — this is how abandoned minimax branches are reclaimed.
//! A panic inside the body (an internal assertion of a construction)
//! surfaces as a failed stop, never as silent success.

use std::sync::mpsc::{sync_channel, Receiver, SyncSender};
use std::thread::JoinHandle;

use crate::instance::Reveal;
use crate::weight::Weight;

use super::{AdvMove, Adversary, GameStop};

/// The body was cancelled from the engine side; unwind quietly.
#[derive(Debug)]
pub struct Aborted;

/// Hands reveals to the engine and receives machine choices.
pub struct Yielder {
    moves: SyncSender<AdvMove>,
    responses: Receiver<usize>,
}

impl Yielder {
    /// Reveal one job and wait for the algorithm's machine choice.
    pub fn reveal(&self, reveal: Reveal) -> Result<usize, Aborted> {
        self.reveal_backfill(reveal, Vec::new())
    }

    /// Reveal one job together with retroactive scenario memberships of
    /// earlier jobs (hyperedges created around old nodes).
    pub fn reveal_backfill(
        &self,
        reveal: Reveal,
        backfill: Vec<super::Backfill>,
    ) -> Result<usize, Aborted> {
        self.moves
            .send(AdvMove::Reveal { job: reveal, backfill })
            .map_err(|_| Aborted)?;
        self.responses.recv().map_err(|_| Aborted)
    }
}

pub struct AdvMeta {
    pub id: String,
    pub m: usize,
    pub initial_k: usize,
    pub target_ratio: Weight,
}

pub struct CoroAdversary {
    meta: AdvMeta,
    moves: Receiver<AdvMove>,
    responses: SyncSender<usize>,
    handle: Option<JoinHandle<()>>,
    finished: bool,
}

impl CoroAdversary {
    pub fn spawn<F>(meta: AdvMeta, body: F) -> Box<dyn Adversary>
    where
        F: FnOnce(&Yielder) -> Result<GameStop, Aborted> + Send + 'static,
    {
        let (move_tx, move_rx) = sync_channel::<AdvMove>(0);
        let (resp_tx, resp_rx) = sync_channel::<usize>(0);
        let handle = std::thread::Builder::new()
            .name(format!("adversary-{}", meta.id))
            .spawn(move || {
                let yielder = Yielder { moves: move_tx.clone(), responses: resp_rx };
                if let Ok(stop) = body(&yielder) {
                    let _ = move_tx.send(AdvMove::Stop(stop));
                }
            })
            .expect("spawn adversary thread");
        Box::new(CoroAdversary {
            meta,
            moves: move_rx,
            responses: resp_tx,
            handle: Some(handle),
            finished: false,
        })
    }

    fn reap_panic(&mut self) -> String {
        match self.handle.take().map(|h| h.join()) {
            Some(Err(payload)) => {
                if let Some(s) = payload.downcast_ref::<&str>() {
                    (*s).to_string()
                } else if let Some(s) = payload.downcast_ref::<String>() {
                    s.clone()
                } else {
                    "adversary panicked".to_string()
                }
            }
            _ => "adversary terminated without a stop".to_string(),
        }
    }
}

impl Adversary for CoroAdversary {
    fn id(&self) -> String {
        self.meta.id.clone()
    }

    fn m(&self) -> usize {
        self.meta.m
    }

    fn initial_k(&self) -> usize {
        self.meta.initial_k
    }

    fn target_ratio(&self) -> Weight {
        self.meta.target_ratio.clone()
    }

    fn next(&mut self, response: Option<usize>) -> AdvMove {
        if self.finished {
            return AdvMove::Stop(GameStop::failed("adversary already stopped", vec![]));
        }
        if let Some(machine) = response {
            if self.responses.send(machine).is_err() {
                self.finished = true;
                let reason = self.reap_panic();
                return AdvMove::Stop(GameStop::failed(reason, vec![]));
            }
        }
        match self.moves.recv() {
            Ok(mv) => {
                if matches!(mv, AdvMove::Stop(_)) {
                    self.finished = true;
                }
                mv
            }
            Err(_) => {
                self.finished = true;
                let reason = self.reap_panic();
                AdvMove::Stop(GameStop::failed(reason, vec![]))
            }
        }
    }
}

impl Drop for CoroAdversary {
    fn drop(&mut self) {
        // Closing the channels unwinds a still-running body at its next
        // yield; join so no thread outlives the game.
        let (_, _) = (
            std::mem::replace(&mut self.responses, sync_channel(0).0),
            std::mem::replace(&mut self.moves, sync_channel(0).1),
        );
        if let Some(handle) = self.handle.take() {
            let _ = handle.join();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversaries::Certificate;
    use crate::instance::Job;

    fn tiny() -> Box<dyn Adversary> {
        CoroAdversary::spawn(
            AdvMeta {
                id: "tiny".into(),
                m: 2,
                initial_k: 1,
                target_ratio: Weight::one(),
            },
            |y| {
                let first = y.reveal(Job::unit(vec![0]))?;
                let _ = y.reveal(Job::unit(vec![0]))?;
                Ok(GameStop::success(
                    Certificate { assignment: vec![first, 1 - first], claimed: Weight::one() },
                    vec![],
                ))
            },
        )
    }

    #[test]
    fn yields_two_reveals_then_stop() {
        let mut adv = tiny();
        let mv = adv.next(None);
        assert!(matches!(mv, AdvMove::Reveal { .. }));
        let mv = adv.next(Some(0));
        assert!(matches!(mv, AdvMove::Reveal { .. }));
        let mv = adv.next(Some(1));
        match mv {
            AdvMove::Stop(stop) => assert!(stop.failure.is_none()),
            _ => panic!("expected stop"),
        }
    }

    #[test]
    fn dropping_midway_reclaims_the_thread() {
        let mut adv = tiny();
        let _ = adv.next(None);
        drop(adv);
    }

    #[test]
    fn panic_surfaces_as_failure() {
        let mut adv = CoroAdversary::spawn(
            AdvMeta { id: "boom".into(), m: 2, initial_k: 1, target_ratio: Weight::one() },
            |y| {
                let _ = y.reveal(Job::unit(vec![0]))?;
                panic!("internal assertion fired");
            },
        );
        let _ = adv.next(None);
        match adv.next(Some(0)) {
            AdvMove::Stop(stop) => {
                let reason = stop.failure.expect("failure expected");
                assert!(reason.contains("internal assertion"), "{reason}");
            }
            _ => panic!("expected stop"),
        }
    }
}
