//! Library surface of the CLI: definition-file parsing, name resolution,
//! command dispatch and report emission, shared by the binary and the
//! integration tests.

pub mod model;
pub mod parser;
pub mod report;
pub mod run;

pub use model::{resolve, Registry, ResolveError};
pub use parser::{parse_definition, DefinitionFile, ParseError};
pub use report::{Item, Report};
pub use run::{run, Command, RunError};
