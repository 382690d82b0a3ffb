use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::LocationType;
use crate::tiles::ExRec;

use super::engine::{EffectLayout, MalignancyFlags, Program, SimError};
use super::fault::{fault_options, Fault, FaultAssignment};
use super::AlphaMatrix;

/// Single-fault effect words for every noisy location and fault option.
#[derive(Debug, Clone)]
pub struct ResponseTable {
    pub layout: EffectLayout,
    pub entries: Vec<ResponseEntry>,
}

#[derive(Debug, Clone)]
pub struct ResponseEntry {
    pub id: u32,
    pub kind: LocationType,
    pub options: Vec<Fault>,
    pub effects: Vec<u64>,
    /// `effects` with duplicates removed.
    pub distinct: Vec<u64>,
}

impl ResponseTable {
    pub fn build(program: &Program) -> Result<ResponseTable, SimError> {
        let mut entries = Vec::new();
        for loc in program.noisy_locations() {
            let options = fault_options(loc.kind);
            let effects = options
                .iter()
                .map(|&f| program.effect(&FaultAssignment::single(loc.id, f)))
                .collect::<Result<Vec<_>, _>>()?;
            let mut distinct = effects.clone();
            distinct.sort_unstable();
            distinct.dedup();
            entries.push(ResponseEntry { id: loc.id, kind: loc.kind, options, effects, distinct });
        }
        Ok(ResponseTable { layout: program.layout(), entries })
    }

    pub fn position(&self, id: u32) -> Option<usize> {
        self.entries.binary_search_by_key(&id, |e| e.id).ok()
    }

    fn pair_malignant(&self, a: &ResponseEntry, b: &ResponseEntry, flags: MalignancyFlags) -> bool {
        a.distinct
            .iter()
            .any(|&ea| b.distinct.iter().any(|&eb| self.layout.is_failure(ea ^ eb, flags)))
    }
}

/// Pair-count summary for one exRec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCount {
    pub alpha: AlphaMatrix,
    pub locations: usize,
    pub pairs_checked: u64,
    /// Locations at which some single fault already fails.
    pub malignant_singles: Vec<u32>,
    pub flags: MalignancyFlags,
}

/// Whether some choice of faults at locations `i` and `j` makes the exRec
/// fail.
pub fn is_malignant_pair(exrec: &ExRec, i: u32, j: u32) -> Result<bool, SimError> {
    is_malignant_pair_with(exrec, i, j, MalignancyFlags::default())
}

pub fn is_malignant_pair_with(exrec: &ExRec, i: u32, j: u32, flags: MalignancyFlags) -> Result<bool, SimError> {
    let program = Program::compile(exrec)?;
    let table = ResponseTable::build(&program)?;
    let find = |id| table.position(id).ok_or(SimError::UnknownLocation(id));
    let (a, b) = (find(i)?, find(j)?);
    if a == b {
        return Err(SimError::DuplicateLocation(i));
    }
    Ok(table.pair_malignant(&table.entries[a], &table.entries[b], flags))
}

/// Counts malignant pairs by location type over every unordered pair of
/// distinct noisy locations, with default flags.
pub fn count_malignant_pairs(exrec: &ExRec) -> Result<AlphaMatrix, SimError> {
    Ok(count_malignant_pairs_with(exrec, MalignancyFlags::default(), None)?.alpha)
}

/// `jobs` bounds the worker threads; the result does not depend on it.
pub fn count_malignant_pairs_with(
    exrec: &ExRec,
    flags: MalignancyFlags,
    jobs: Option<usize>,
) -> Result<PairCount, SimError> {
    let program = Program::compile(exrec)?;
    let table = ResponseTable::build(&program)?;
    Ok(count_with_table(&table, flags, jobs))
}

pub fn count_with_table(table: &ResponseTable, flags: MalignancyFlags, jobs: Option<usize>) -> PairCount {
    let n = table.entries.len();
    let row = |i: usize| -> AlphaMatrix {
        let mut m = AlphaMatrix::zero();
        let a = &table.entries[i];
        for b in &table.entries[i + 1..] {
            if table.pair_malignant(a, b, flags) {
                *m.get_mut(a.kind.number(), b.kind.number()) += 1;
            }
        }
        m
    };
    let sum = |v: Vec<AlphaMatrix>| {
        let mut total = AlphaMatrix::zero();
        for m in &v {
            total.add(m);
        }
        total
    };
    let run = || sum((0..n).into_par_iter().map(row).collect());
    let alpha = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| sum((0..n).map(row).collect())),
        None => run(),
    };
    let malignant_singles = table
        .entries
        .iter()
        .filter(|e| e.distinct.iter().any(|&x| table.layout.is_failure(x, flags)))
        .map(|e| e.id)
        .collect();
    PairCount {
        alpha,
        locations: n,
        pairs_checked: (n as u64) * (n as u64).saturating_sub(1) / 2,
        malignant_singles,
        flags,
    }
}
