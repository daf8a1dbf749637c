//! Library side of the `rnashapes` command-line tool.

pub mod acceptance;
pub mod commands;
pub mod corpus;
