//! Toolchain for OntoSpec ontologies: a parser for the `.osp` language, an
//! OntoClean-style validator, subsumption analysis, a first-order emitter and
//! the DOLCE-OS reference corpus.

pub mod model;
pub mod parser;
pub mod logic;
pub mod analysis;
pub mod validator;
pub mod corpus;
pub mod cli;
