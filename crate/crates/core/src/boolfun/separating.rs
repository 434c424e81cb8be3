// SPDX-License-Identifier: Apache-2.0

//! Separating sets: inputs that pairwise differ on the union of their
//! sensitive coordinates.

use std::collections::HashSet;

use crate::bits::compact;
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::restriction::Restriction;
use crate::table::TruthTable;

use super::sensitivity::sensitive_set;

fn check_distinct(set: &[u32]) -> Result<()> {
    let mut seen = HashSet::with_capacity(set.len());
    for &x in set {
        if !seen.insert(x) {
            return Err(Error::DuplicateInput(x));
        }
    }
    Ok(())
}

/// First pair violating the separation property, if any.
pub fn find_violation<C: Coeff>(set: &[u32], f: &TruthTable<C>) -> Result<Option<(u32, u32)>> {
    check_distinct(set)?;
    let sens: Vec<u32> = set.iter().map(|&x| sensitive_set(f, x)).collect();
    for a in 0..set.len() {
        for b in a + 1..set.len() {
            let union = sens[a] | sens[b];
            if (set[a] ^ set[b]) & union == 0 {
                return Ok(Some((set[a], set[b])));
            }
        }
    }
    Ok(None)
}

/// Pairwise separation check; duplicate elements are an error.
pub fn is_separating<C: Coeff>(set: &[u32], f: &TruthTable<C>) -> Result<bool> {
    Ok(find_violation(set, f)?.is_none())
}

/// `F|ρ`: members consistent with `ρ`, projected onto the variables `ρ`
/// leaves unset and renumbered as in [`TruthTable::restrict`].
pub fn restrict_set(set: &[u32], rho: &Restriction) -> Vec<u32> {
    let keep = crate::bits::full_mask(rho.n()) & !rho.set_vars();
    set.iter()
        .filter(|&&w| rho.is_consistent(w))
        .map(|&w| compact(w, keep))
        .collect()
}

/// The coordinate sensitive for the most members of `F`, with those members.
/// Ties go to the smallest index.
pub fn dense_sensitive_subset<C: Coeff>(set: &[u32], f: &TruthTable<C>) -> Result<(usize, Vec<u32>)> {
    if set.is_empty() {
        return Err(Error::EmptyInputSet);
    }
    let sens: Vec<u32> = set.iter().map(|&x| sensitive_set(f, x)).collect();
    let mut best = (0usize, 0usize);
    for i in 0..f.n() {
        let c = sens.iter().filter(|&&s| s >> i & 1 == 1).count();
        if c > best.1 {
            best = (i, c);
        }
    }
    let i = best.0;
    let sub = set.iter().zip(&sens).filter(|(_, &s)| s >> i & 1 == 1).map(|(&x, _)| x).collect();
    Ok((i, sub))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_rejected() {
        let f = TruthTable::from_predicate(2, |x| x != 0).unwrap();
        assert!(matches!(is_separating(&[1, 1], &f), Err(Error::DuplicateInput(1))));
    }

    #[test]
    fn restrict_set_examples() {
        let rho = Restriction::parse("0*").unwrap();
        assert_eq!(restrict_set(&[0, 1, 2, 3], &rho), vec![0, 1]);
        let rho = Restriction::parse("1*").unwrap();
        assert!(restrict_set(&[0, 2], &rho).is_empty());
    }

    #[test]
    fn or2_minterms_dense_subset() {
        let f = TruthTable::from_predicate(2, |x| x != 0).unwrap();
        let (i, sub) = dense_sensitive_subset(&[0b01, 0b10], &f).unwrap();
        assert_eq!(i, 0);
        assert_eq!(sub, vec![0b01]);
    }

    #[test]
    fn constant_function_pairs_are_not_separated() {
        let f = TruthTable::new(2, vec![1i64; 4]).unwrap();
        assert!(!is_separating(&[0, 3], &f).unwrap());
        assert!(is_separating(&[3], &f).unwrap());
    }
}
