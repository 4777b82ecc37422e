//! Game sessions: a human plays against the engine on one catalog graph.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use graphnim::game::{apply_move, GraphTopology};
use graphnim::wire::{named_weights, Analysis, HistoryEntry, MoveWire, Player, SessionState};
use graphnim::{Move, Solver, WeightConfig};

use crate::error::ApiError;

pub struct Session {
    pub id: String,
    solver: Arc<Solver>,
    initial: WeightConfig,
    current: WeightConfig,
    turn: Player,
    history: Vec<HistoryEntry>,
    last_engine_move: Option<MoveWire>,
}

impl Session {
    /// Starts a session; when the engine moves first it replies immediately.
    pub fn start(id: String, solver: Arc<Solver>, initial: WeightConfig, first: Player) -> Result<Self, ApiError> {
        let mut session = Self {
            id,
            solver,
            current: initial.clone(),
            initial,
            turn: first,
            history: Vec::new(),
            last_engine_move: None,
        };
        if first == Player::Engine {
            session.engine_turn()?;
        }
        Ok(session)
    }

    fn topology(&self) -> &GraphTopology {
        self.solver.topology()
    }

    pub fn is_over(&self) -> bool {
        self.current.is_terminal()
    }

    fn record(&mut self, player: Player, mv: &Move) -> Result<(), ApiError> {
        let next = apply_move(self.topology(), &self.current, mv)?;
        let entry = HistoryEntry {
            player,
            mv: MoveWire::new(self.topology(), mv),
            weights_after: named_weights(self.topology(), &next),
        };
        self.history.push(entry);
        self.current = next;
        self.turn = player.other();
        Ok(())
    }

    fn engine_turn(&mut self) -> Result<(), ApiError> {
        self.last_engine_move = None;
        if let Some(mv) = self.solver.engine_move(&self.current)? {
            self.record(Player::Engine, &mv)?;
            self.last_engine_move = Some(MoveWire::new(self.topology(), &mv));
        }
        Ok(())
    }

    /// Applies the human's move and, unless that ended the game, the engine's reply.
    pub fn human_move(&mut self, mv: &MoveWire) -> Result<(), ApiError> {
        if self.is_over() {
            return Err(ApiError::conflict("game_over", "the game is over"));
        }
        if self.turn != Player::Human {
            return Err(ApiError::conflict("not_your_turn", "it is the engine's turn"));
        }
        let mv = mv.resolve(self.topology())?;
        self.record(Player::Human, &mv)?;
        self.last_engine_move = None;
        if !self.is_over() {
            self.engine_turn()?;
        }
        Ok(())
    }

    /// Analysis of the position after a hypothetical move; the session is unchanged.
    pub fn what_if(&self, mv: &MoveWire) -> Result<Analysis, ApiError> {
        let mv = mv.resolve(self.topology())?;
        let next = apply_move(self.topology(), &self.current, &mv)?;
        Ok(Analysis::compute(&self.solver, &next)?)
    }

    pub fn state(&self) -> Result<SessionState, ApiError> {
        let over = self.is_over();
        Ok(SessionState {
            id: self.id.clone(),
            graph: self.topology().name().to_string(),
            initial: named_weights(self.topology(), &self.initial),
            weights: named_weights(self.topology(), &self.current),
            turn: self.turn,
            history: self.history.clone(),
            engine_move: self.last_engine_move.clone(),
            analysis: Analysis::compute(&self.solver, &self.current)?,
            game_over: over,
            // the player who made the last move wins
            winner: over.then(|| self.turn.other()),
        })
    }
}

struct Slot {
    session: Arc<tokio::sync::Mutex<Session>>,
    last_used: Instant,
}

/// Bounded session table. Idle sessions are evicted first, then the least recently used.
pub struct SessionStore {
    slots: Mutex<HashMap<String, Slot>>,
    capacity: usize,
    idle_timeout: Duration,
}

impl SessionStore {
    pub fn new(capacity: usize, idle_timeout: Duration) -> Self {
        Self {
            slots: Mutex::new(HashMap::new()),
            capacity: capacity.max(1),
            idle_timeout,
        }
    }

    pub fn insert(&self, session: Session) -> Arc<tokio::sync::Mutex<Session>> {
        let now = Instant::now();
        let mut slots = self.slots.lock().expect("session table poisoned");
        slots.retain(|_, s| now.duration_since(s.last_used) < self.idle_timeout);
        while slots.len() >= self.capacity {
            let oldest = slots
                .iter()
                .min_by_key(|(_, s)| s.last_used)
                .map(|(id, _)| id.clone())
                .expect("table is non-empty");
            slots.remove(&oldest);
        }
        let id = session.id.clone();
        let session = Arc::new(tokio::sync::Mutex::new(session));
        slots.insert(id, Slot { session: session.clone(), last_used: now });
        session
    }

    pub fn get(&self, id: &str) -> Option<Arc<tokio::sync::Mutex<Session>>> {
        let now = Instant::now();
        let mut slots = self.slots.lock().expect("session table poisoned");
        let expired = slots.get(id).is_some_and(|s| now.duration_since(s.last_used) >= self.idle_timeout);
        if expired {
            slots.remove(id);
            return None;
        }
        slots.get_mut(id).map(|slot| {
            slot.last_used = now;
            slot.session.clone()
        })
    }

    pub fn len(&self) -> usize {
        self.slots.lock().expect("session table poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
