// SPDX-License-Identifier: Apache-2.0

//! Player II's counter-play constructions.

pub mod lift;
pub mod menger;
pub mod rothberger;
pub mod tail;

pub use lift::{
    lift_strategy, project_elements, project_selection, severe_defeat_play, severe_defeat_run, severe_transcript,
    LiftedStrategy, SevereInning, SevereReport,
};
pub use menger::{menger_counterplay, GateMode, LevelReport, MengerReport};
pub use rothberger::{
    history_wedge_strategy, meets_family, rothberger_counterplay, rothberger_pick, DecodedInning, HistoryWedgeStrategy,
    MeetItem, RothbergerConfig, RothbergerPick, RothbergerReport, WedgeItem, HISTORY_CAP, MEETS_BOUND,
};
pub use tail::{inf_of_cut, tail_family, union_family, verify_tail_set, BranchFamily, CutBound, CutVector, TailFamily};
