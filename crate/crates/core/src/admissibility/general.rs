//! Brute-force admissibility: t_H(D) = t_N(D) and t_H ≤ t_N on every
//! enumerated stable line.

use alloc::vec::Vec;

use crate::phimod::{
    stable_lines, t_h_module, t_n_line, t_n_module, FilIndex, FiltrationData, PhiNModule,
    StableLine, StableTag,
};
use crate::{Result, Q64};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineRecord {
    pub line: StableLine,
    pub t_h: Q64,
    pub t_n: Q64,
    pub passed: bool,
    pub generic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralVerdict {
    pub t_h: Q64,
    pub t_n: Q64,
    pub lines: Vec<LineRecord>,
    pub tag: StableTag,
    /// Rests on a bound-certified square-root negative.
    pub conditional: bool,
    pub passed: bool,
}

pub fn check_general(d: &PhiNModule, fil: &FiltrationData) -> Result<GeneralVerdict> {
    let t_h = t_h_module(d, fil);
    let t_n = t_n_module(d)?;
    let stable = stable_lines(d, fil)?;
    let index = FilIndex::new(d, fil);
    let mut lines = Vec::with_capacity(stable.lines.len());
    for (k, line) in stable.lines.into_iter().enumerate() {
        let lh = index.t_h(&line);
        let ln = t_n_line(d, &line)?;
        lines.push(LineRecord {
            line,
            t_h: lh,
            t_n: ln,
            passed: lh <= ln,
            generic: stable.generic == Some(k),
        });
    }
    let passed = t_h == t_n && lines.iter().all(|l| l.passed);
    Ok(GeneralVerdict {
        t_h,
        t_n,
        lines,
        tag: stable.tag,
        conditional: stable.conditional,
        passed,
    })
}
