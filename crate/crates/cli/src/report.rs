//! JSON shapes written to stdout. Field order is declaration order and all
//! collections are ordered, so identical inputs produce identical bytes.

use choiscope_core::channels::{CppCheck, PropertyCheck};
use choiscope_core::{PpVerdict, PropertyReport};
use serde::Serialize;

use crate::io;

#[derive(Serialize)]
pub struct ReportFile {
    pub version: &'static str,
    pub seed: u64,
    pub tol: TolOut,
    pub kind: String,
    pub normalized_input: bool,
    pub dim_in: usize,
    pub dim_out: usize,
    pub choi_trace: f64,
    pub hp: CheckOut,
    pub cpp: CppOut,
    pub pp: PpOut,
    pub tp: CheckOut,
    pub unital: CheckOut,
    pub doubly_stochastic: bool,
}

#[derive(Serialize)]
pub struct TolOut {
    pub rel: f64,
    pub abs: f64,
}

#[derive(Serialize)]
pub struct CheckOut {
    pub holds: bool,
    pub residual: f64,
    pub threshold: f64,
}

impl From<PropertyCheck> for CheckOut {
    fn from(check: PropertyCheck) -> CheckOut {
        CheckOut {
            holds: check.holds,
            residual: check.residual,
            threshold: check.threshold,
        }
    }
}

#[derive(Serialize)]
pub struct CppOut {
    pub holds: bool,
    pub min_eigenvalue: f64,
    pub threshold: f64,
}

impl From<CppCheck> for CppOut {
    fn from(check: CppCheck) -> CppOut {
        CppOut {
            holds: check.holds,
            min_eigenvalue: check.min_eigenvalue,
            threshold: check.threshold,
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PpOut {
    Violation {
        value: f64,
        threshold: f64,
        input: Vec<[f64; 2]>,
        output: Vec<[f64; 2]>,
    },
    NoViolationFound {
        best_value: f64,
        restarts: u32,
    },
    HermiticityFailed {
        residual: f64,
    },
}

impl From<&PpVerdict> for PpOut {
    fn from(verdict: &PpVerdict) -> PpOut {
        match verdict {
            PpVerdict::Violation(witness) => PpOut::Violation {
                value: witness.value,
                threshold: witness.threshold,
                input: io::column_to_pairs(&witness.input),
                output: io::column_to_pairs(&witness.output),
            },
            PpVerdict::NoViolationFound {
                best_value,
                restarts,
            } => PpOut::NoViolationFound {
                best_value: *best_value,
                restarts: *restarts,
            },
            PpVerdict::HermiticityFailed { residual } => PpOut::HermiticityFailed {
                residual: *residual,
            },
        }
    }
}

impl ReportFile {
    pub fn new(
        report: &PropertyReport,
        kind: String,
        normalized_input: bool,
        seed: u64,
        rel: f64,
        abs: f64,
    ) -> ReportFile {
        ReportFile {
            version: env!("CARGO_PKG_VERSION"),
            seed,
            tol: TolOut { rel, abs },
            kind,
            normalized_input,
            dim_in: report.dim_in,
            dim_out: report.dim_out,
            choi_trace: report.choi_trace,
            hp: report.hp.into(),
            cpp: report.cpp.into(),
            pp: (&report.pp).into(),
            tp: report.tp.into(),
            unital: report.unital.into(),
            doubly_stochastic: report.doubly_stochastic,
        }
    }
}

#[derive(Serialize)]
pub struct ChannelFileOut {
    pub kind: &'static str,
    pub dim_in: usize,
    pub dim_out: usize,
    pub data: DataOut,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum DataOut {
    Matrix(Vec<Vec<[f64; 2]>>),
    List(Vec<Vec<Vec<[f64; 2]>>>),
}
