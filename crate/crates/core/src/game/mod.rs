// SPDX-License-Identifier: Apache-2.0

//! Finite-depth Menger and Rothberger games.

pub mod nice;
pub mod play;
pub mod strategy;

pub use nice::{normalize_to_nice, paths_of_length, NiceNode, NiceStrategyTree};
pub use play::{adjudicate, check_selection, game_value, play, GameKind, GameValue, Outcome, PlayTranscript};
pub use strategy::{
    branch_of, history_path, ConstantStrategy, FnSelector, FnStrategy, Inning, ScriptedSelector, SeededRandomStrategy,
    Selector, Strategy, TreeStrategy,
};
