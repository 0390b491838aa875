//! Monte-Carlo experiment runner: configuration, metrics, the sweep and CSV output.

mod config;
mod csvio;
mod metrics;
mod run;

pub use config::{db_to_linear, parse_estimators, ExperimentConfig};
pub use csvio::{read_csv, write_csv, write_csv_to, CSV_HEADER};
pub use metrics::{mse_channel, mse_doa, mse_fading, MultCounter};
pub use run::{run_experiment, ExperimentResult, ExperimentRow, RowStats};
