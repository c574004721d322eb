//! Library half of the CLI: the output document schemas, exposed so tests
//! and downstream tooling can parse the JSON documents back.

pub mod output;
