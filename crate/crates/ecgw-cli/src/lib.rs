//! Library surface of the command-line tool: the document format and the
//! staircase renderings, shared with the integration tests.

pub mod document;
pub mod dot;
