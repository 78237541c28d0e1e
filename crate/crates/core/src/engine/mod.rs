//! Rule-based case engine: the elimination of the five-vertex graphs and the
//! final gluing argument showing that no minimal chart of type `(m;7)`
//! exists.

pub mod config;
pub mod fig12;
pub mod rules;
pub mod theorem;
pub mod trace;

pub use config::{BranchKey, Config, ConfigKey, EngineError};
pub use fig12::{eliminate_fig12, replay, Fig12Outcome, ReplayReport};
pub use rules::{EngineOptions, Rule, RuleId, RuleKind};
pub use trace::{Check, Trace, TraceRecord, Verdict};
