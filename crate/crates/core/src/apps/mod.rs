//! Signal-processing applications built on the joint transforms.

pub mod demo;
mod filter;
mod ifreq;
mod separate;
mod shear;
mod ssb;
mod tfd;

pub use filter::{lct_filter, FilterSpec};
pub use ifreq::{if_estimate, IfPoint, IF_GATE};
pub use separate::{recover, separate, LctCutoff, Side};
pub use shear::{shear_reduce, BtProducts, ShearParams, ShearResult, ShearSearch};
pub use ssb::{ssb_demodulate, ssb_modulate, ssb_modulate_from_lct, ssb_recovery_error, SsbKey};
pub use tfd::{stft_tfd, TfdMatrix};
