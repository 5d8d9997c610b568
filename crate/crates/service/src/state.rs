use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};
use std::time::{Duration, Instant};

use qbra_core::advisor::Advisor;
use qbra_core::session::{Session, SessionError};

use crate::config::{ConfigError, ServiceConfig};

/// One stored session. The async mutex serializes requests to it.
pub struct SessionSlot {
    pub session: tokio::sync::Mutex<Session>,
    last_seen: Mutex<Instant>,
}

impl SessionSlot {
    fn touch(&self, now: Instant) {
        *self.last_seen.lock().expect("lock") = now;
    }

    fn idle(&self, now: Instant) -> Duration {
        now.saturating_duration_since(*self.last_seen.lock().expect("lock"))
    }
}

pub struct AppState {
    config: ServiceConfig,
    advisor: RwLock<Result<Arc<Advisor>, String>>,
    sessions: Mutex<HashMap<String, Arc<SessionSlot>>>,
}

pub enum StartError {
    Unavailable(String),
    Session(SessionError),
}

impl AppState {
    /// Build the state, keeping a load failure so requests can report 503.
    pub fn new(config: ServiceConfig) -> Self {
        let advisor = config.load_advisor().map(Arc::new).map_err(|e| e.to_string());
        AppState::with_advisor(config, advisor)
    }

    pub fn with_advisor(config: ServiceConfig, advisor: Result<Arc<Advisor>, String>) -> Self {
        AppState { config, advisor: RwLock::new(advisor), sessions: Mutex::new(HashMap::new()) }
    }

    pub fn config(&self) -> &ServiceConfig {
        &self.config
    }

    pub fn advisor(&self) -> Result<Arc<Advisor>, String> {
        self.advisor.read().expect("lock").clone()
    }

    pub fn fixture_version(&self) -> Option<String> {
        self.advisor().ok().map(|a| a.version().to_string())
    }

    /// Reload fixtures from disk and swap them in. Running sessions keep the
    /// advisor they started with; on failure the current one stays.
    pub fn reload(&self) -> Result<String, ConfigError> {
        let fresh = Arc::new(self.config.load_advisor()?);
        let version = fresh.version().to_string();
        *self.advisor.write().expect("lock") = Ok(fresh);
        Ok(version)
    }

    pub fn swap_advisor(&self, advisor: Arc<Advisor>) {
        *self.advisor.write().expect("lock") = Ok(advisor);
    }

    pub fn create_session(&self) -> Result<Arc<SessionSlot>, StartError> {
        let advisor = self.advisor().map_err(StartError::Unavailable)?;
        let session = advisor.start().map_err(StartError::Session)?;
        let id = session.id().to_string();
        let slot = Arc::new(SessionSlot { session: tokio::sync::Mutex::new(session), last_seen: Mutex::new(Instant::now()) });
        self.sessions.lock().expect("lock").insert(id, Arc::clone(&slot));
        Ok(slot)
    }

    /// Live session by id; expired sessions are dropped on access.
    pub fn session(&self, id: &str) -> Option<Arc<SessionSlot>> {
        let now = Instant::now();
        let mut sessions = self.sessions.lock().expect("lock");
        let slot = sessions.get(id)?;
        if slot.idle(now) > self.config.session_ttl() {
            sessions.remove(id);
            return None;
        }
        slot.touch(now);
        Some(Arc::clone(slot))
    }

    /// Drop every session idle for longer than the TTL; returns how many went.
    pub fn evict_expired(&self) -> usize {
        let now = Instant::now();
        let ttl = self.config.session_ttl();
        let mut sessions = self.sessions.lock().expect("lock");
        let before = sessions.len();
        sessions.retain(|_, slot| slot.idle(now) <= ttl);
        before - sessions.len()
    }

    pub fn session_count(&self) -> usize {
        self.sessions.lock().expect("lock").len()
    }
}
