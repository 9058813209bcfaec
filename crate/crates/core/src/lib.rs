pub(crate) mod conv;
pub mod apps;
pub mod error;
pub mod fourier;
pub mod io;
pub mod lct;
pub mod signal;
pub mod special;
pub mod joint;
pub mod verify;
#[cfg(feature = "cli")]
pub mod cli;
