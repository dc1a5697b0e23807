//! Library surface of the command-line tool, exposed so the verification
//! suites can run inside integration tests as well as from the binary.

pub mod report;
pub mod suites;

pub use report::{Report, Status, VerifyItem};
pub use suites::{run_suite, Config, Suite};
