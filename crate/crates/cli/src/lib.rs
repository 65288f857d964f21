//! File formats, experiment sweeps, plots and self-checks around
//! [`stacking_core`]. The `stacking` binary is a thin clap front end over
//! these modules.

pub mod experiment;
pub mod format;
pub mod plot;
pub mod verify;
