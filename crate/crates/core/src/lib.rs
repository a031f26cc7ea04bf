//! Finite-level models of the truncated unipotent matrix groups
//! `L_{n,d}(F_q) = (1 + s*gl_n(F_q)[s]/(s^{d+1}))^x`, together with the
//! machinery that lives on top of them: Lang maps and their kernels,
//! the Hopf-algebra structure on coordinate rings, transvection-target
//! quotient maps, subgroup lattices, and Artin-Schreier cover counts.
//!
//! Everything is exact; all claims the crate makes about itself are
//! checked by exhaustive enumeration under a configurable state cap.

pub mod covers;
pub mod error;
pub mod gf;
pub mod hopf;
pub mod lang;
pub mod lgroup;
pub mod matrix;
pub mod poly;
pub mod quasip;
pub mod scan;
pub mod subgrp;

pub use error::{Error, Result};

use std::sync::atomic::{AtomicU64, Ordering};

/// Default ceiling on exhaustively enumerated state spaces.
pub const DEFAULT_CAP: u64 = 1 << 20;

static GLOBAL_CAP: AtomicU64 = AtomicU64::new(DEFAULT_CAP);

/// Current global cap on enumeration sizes.
pub fn global_cap() -> u128 {
    GLOBAL_CAP.load(Ordering::Relaxed) as u128
}

/// Override the global enumeration cap (e.g. from `WITTLANG_CAP`).
pub fn set_global_cap(cap: u64) {
    GLOBAL_CAP.store(cap, Ordering::Relaxed);
}

pub(crate) fn check_cap(needed: u128) -> Result<()> {
    let cap = global_cap();
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    Ok(())
}
