pub mod automata;
pub mod ccs;
pub mod cli;
pub mod equiv;
pub mod lambda;
pub mod lts;
pub mod syntax;
