//! The `conevol` command line: angle parsing, sweeps, and rendering of
//! reports as text, CSV and JSON.

pub mod angle;
pub mod app;
pub mod error;
pub mod render;
pub mod sweep;

pub use angle::{parse_angle, AngleExpr, AngleMode};
pub use app::run;
pub use error::CliError;
pub use sweep::{run_sweep, SweepRow};
