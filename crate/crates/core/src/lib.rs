pub mod automata;
pub mod conformance;
pub mod models;
pub mod regex;
