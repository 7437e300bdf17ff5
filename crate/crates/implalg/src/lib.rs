//! File formats, corpus verification and the command-line front end for
//! [`implalg_core`].

pub mod cli;
pub mod dot;
pub mod format;
pub mod verify;
