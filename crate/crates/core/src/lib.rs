pub mod automaton;
pub mod error;
pub mod expr;
pub mod kleene;
pub mod pomset;
pub mod step;
pub mod language;
pub mod stm;
pub mod cli;
