//! Constructions, exhaustive oracles and exact bound checks for finite
//! groups in the product varieties `A_q A_r` and `A_p A_q A_r`.

pub mod bounds;
pub mod config;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod gf;
pub mod groupmodel;
pub mod matgrp;
pub mod oracle;
pub mod par;
pub mod permgrp;
pub mod report;
pub mod selftest;

pub use config::{Config, ExecMode, Limits};
pub use error::{Error, Result};
