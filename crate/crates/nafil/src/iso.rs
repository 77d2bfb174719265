//! Isomorphism testing, canonical forms, and classification.
//!
//! Loop isomorphisms fix the identity element, so relabelings range over
//! the (n-1)! permutations of elements 2..=n. The canonical form of a
//! table is the row-major lexicographic minimum over those relabelings.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::identity::{property_report, PropertyReport};
use crate::table::{LoopTable, Side};

/// Cheap isomorphism invariants used to reject non-isomorphic pairs early.
/// Equality never *decides* isomorphism positively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    /// Sorted multiset of diagonal entries.
    pub diagonal: Vec<u8>,
    /// Sorted multiset of `(left, right)` p-orders, 0 for "none".
    pub p_order_pairs: Vec<(u8, u8)>,
    /// Number of triples `(a, b, c)` with `(a*b)*c = a*(b*c)`.
    pub associating_triples: u64,
    pub abelian: bool,
}

pub fn fingerprint(t: &LoopTable) -> Result<Fingerprint> {
    if !t.is_normal() {
        return Err(Error::NotNormal);
    }
    let n = t.order();
    let mut diagonal: Vec<u8> = (1..=n).map(|k| t.get(k, k)).collect();
    diagonal.sort_unstable();
    let mut p_order_pairs: Vec<(u8, u8)> = (1..=n as u8)
        .map(|a| {
            let l = t.p_order(a, Side::Left).unwrap().unwrap_or(0);
            let r = t.p_order(a, Side::Right).unwrap().unwrap_or(0);
            (l, r)
        })
        .collect();
    p_order_pairs.sort_unstable();
    let mut associating_triples = 0u64;
    for a in 1..=n as u8 {
        for b in 1..=n as u8 {
            let ab = t.product(a, b);
            for c in 1..=n as u8 {
                if t.product(ab, c) == t.product(a, t.product(b, c)) {
                    associating_triples += 1;
                }
            }
        }
    }
    Ok(Fingerprint {
        order: n,
        diagonal,
        p_order_pairs,
        associating_triples,
        abelian: t.is_abelian(),
    })
}

/// Branch-and-bound state for the lexicographic-minimum relabeling.
///
/// `sigma` maps original elements to new labels (0 = unassigned) and is
/// built up while sweeping row 2 of the relabeled table; once row 2 is
/// complete the permutation is total and the remaining rows are compared
/// directly. `best` always holds a reachable relabeling, so pruning on
/// "strictly greater than best" is sound; when a cell comes out strictly
/// smaller, the candidate prefix is committed into `best` and the rest of
/// the buffer is set to MAX, which the leftmost completion then overwrites.
struct Canonicalizer<'a> {
    t: &'a LoopTable,
    n: usize,
    sigma: Vec<u8>,
    inv_sigma: Vec<u8>,
    best: Vec<u8>,
    best_sigma: Vec<u8>,
}

impl<'a> Canonicalizer<'a> {
    fn new(t: &'a LoopTable) -> Self {
        let n = t.order();
        let identity: Vec<u8> = (0..=n as u8).collect();
        Canonicalizer {
            t,
            n,
            sigma: vec![0; n + 1],
            inv_sigma: vec![0; n + 1],
            best: t.cells().to_vec(),
            best_sigma: identity,
        }
    }

    fn run(mut self) -> (Vec<u8>, Vec<u8>) {
        if self.n <= 2 {
            return (self.best, self.best_sigma);
        }
        self.sigma[1] = 1;
        self.inv_sigma[1] = 1;
        for a in 2..=self.n {
            self.sigma[a] = 2;
            self.inv_sigma[2] = a as u8;
            self.row2(2, false);
            self.sigma[a] = 0;
            self.inv_sigma[2] = 0;
        }
        (self.best, self.best_sigma)
    }

    fn smallest_free_label(&self) -> u8 {
        (2..=self.n as u8).find(|&l| self.inv_sigma[l as usize] == 0).unwrap()
    }

    /// Sweeps row 2 of the relabeled table from column `c`, branching on
    /// which original element receives label `c` when that is still open.
    fn row2(&mut self, c: usize, dirty: bool) {
        if c > self.n {
            self.finish(dirty);
            return;
        }
        let row_orig = self.inv_sigma[2] as usize;
        if self.inv_sigma[c] != 0 {
            self.emit_cell(c, row_orig, dirty);
            return;
        }
        for o in 2..=self.n {
            if self.sigma[o] != 0 {
                continue;
            }
            self.sigma[o] = c as u8;
            self.inv_sigma[c] = o as u8;
            self.emit_cell(c, row_orig, dirty);
            self.sigma[o] = 0;
            self.inv_sigma[c] = 0;
        }
    }

    /// Labels the value at relabeled cell (2, c) — assigning the smallest
    /// free label when the value is still unlabeled, which is exact because
    /// this cell lexicographically dominates everything after it — then
    /// compares against `best`.
    fn emit_cell(&mut self, c: usize, row_orig: usize, dirty: bool) {
        let v = self.t.get(row_orig, self.inv_sigma[c] as usize) as usize;
        let fresh = self.sigma[v] == 0;
        if fresh {
            let l = self.smallest_free_label();
            self.sigma[v] = l;
            self.inv_sigma[l as usize] = v as u8;
        }
        let label = self.sigma[v];
        let idx = self.n + (c - 1); // row 2, column c, row-major from row 1
        let mut dirty = dirty;
        if label > self.best[idx] {
            // prune
        } else {
            if label < self.best[idx] {
                self.best[idx] = label;
                for cell in self.best[idx + 1..].iter_mut() {
                    *cell = u8::MAX;
                }
                dirty = true;
            }
            self.row2(c + 1, dirty);
        }
        if fresh {
            self.inv_sigma[self.sigma[v] as usize] = 0;
            self.sigma[v] = 0;
        }
    }

    /// Rows 3..=n are fully determined once row 2 is swept; compare them
    /// cell by cell against `best`.
    fn finish(&mut self, mut dirty: bool) {
        let n = self.n;
        for r in 3..=n {
            let row_orig = self.inv_sigma[r] as usize;
            for c in 1..=n {
                let label = self.sigma[self.t.get(row_orig, self.inv_sigma[c] as usize) as usize];
                let idx = (r - 1) * n + (c - 1);
                if label > self.best[idx] {
                    return;
                }
                if label < self.best[idx] {
                    self.best[idx] = label;
                    for cell in self.best[idx + 1..].iter_mut() {
                        *cell = u8::MAX;
                    }
                    dirty = true;
                }
            }
        }
        if dirty {
            self.best_sigma.copy_from_slice(&self.sigma);
        }
    }
}

/// The lexicographically minimal relabeling of `t` over all identity-fixing
/// permutations. Idempotent; output is normal and isomorphic to the input.
pub fn canonical_form(t: &LoopTable) -> Result<LoopTable> {
    Ok(canonical_form_with_perm(t)?.0)
}

/// Canonical form together with a permutation achieving it
/// (1-based, `perm[old] = new`).
pub fn canonical_form_with_perm(t: &LoopTable) -> Result<(LoopTable, Vec<u8>)> {
    if !t.is_normal() {
        return Err(Error::NotNormal);
    }
    let (cells, sigma) = Canonicalizer::new(t).run();
    Ok((LoopTable::from_valid_cells(t.order(), cells), sigma))
}

/// Per-element invariants for image pruning in [`are_isomorphic`].
fn element_invariants(t: &LoopTable) -> Vec<(u8, u8, u8)> {
    (1..=t.order() as u8)
        .map(|a| {
            let l = t.p_order(a, Side::Left).unwrap().unwrap_or(0);
            let r = t.p_order(a, Side::Right).unwrap().unwrap_or(0);
            let ord = t.generated_subloop(&[a]).unwrap().len() as u8;
            (l, r, ord)
        })
        .collect()
}

fn propagate(t1: &LoopTable, t2: &LoopTable, sigma: &mut [u8], used: &mut [u8]) -> bool {
    let n = t1.order();
    loop {
        let mut progress = false;
        for a in 1..=n {
            if sigma[a] == 0 {
                continue;
            }
            for b in 1..=n {
                if sigma[b] == 0 {
                    continue;
                }
                let c = t1.product(a as u8, b as u8) as usize;
                let img = t2.product(sigma[a], sigma[b]);
                if sigma[c] == 0 {
                    if used[img as usize] != 0 {
                        return false;
                    }
                    sigma[c] = img;
                    used[img as usize] = c as u8;
                    progress = true;
                } else if sigma[c] != img {
                    return false;
                }
            }
        }
        if !progress {
            return true;
        }
    }
}

fn extend(
    t1: &LoopTable,
    t2: &LoopTable,
    inv1: &[(u8, u8, u8)],
    inv2: &[(u8, u8, u8)],
    sigma: Vec<u8>,
    used: Vec<u8>,
) -> Option<Vec<u8>> {
    let mut sigma = sigma;
    let mut used = used;
    if !propagate(t1, t2, &mut sigma, &mut used) {
        return None;
    }
    let n = t1.order();
    let Some(a) = (2..=n).find(|&a| sigma[a] == 0) else {
        return Some(sigma);
    };
    for m in 2..=n as u8 {
        if used[m as usize] != 0 || inv1[a - 1] != inv2[m as usize - 1] {
            continue;
        }
        let mut s2 = sigma.clone();
        let mut u2 = used.clone();
        s2[a] = m;
        u2[m as usize] = a as u8;
        if let Some(found) = extend(t1, t2, inv1, inv2, s2, u2) {
            return Some(found);
        }
    }
    None
}

/// Searches for a bijection `sigma` with `sigma(1) = 1` and
/// `sigma(a*b) = sigma(a) *' sigma(b)`; returns it 1-based if one exists.
///
/// Fingerprint mismatch rejects immediately; otherwise a backtracking
/// search assigns images, propagating products of already-mapped pairs.
pub fn are_isomorphic(t1: &LoopTable, t2: &LoopTable) -> Result<Option<Vec<u8>>> {
    if !t1.is_normal() || !t2.is_normal() {
        return Err(Error::NotNormal);
    }
    if t1.order() != t2.order() || fingerprint(t1)? != fingerprint(t2)? {
        return Ok(None);
    }
    let n = t1.order();
    let inv1 = element_invariants(t1);
    let inv2 = element_invariants(t2);
    let mut sigma = vec![0u8; n + 1];
    let mut used = vec![0u8; n + 1];
    sigma[1] = 1;
    used[1] = 1;
    let found = extend(t1, t2, &inv1, &inv2, sigma, used);
    if let Some(sig) = &found {
        for a in 1..=n as u8 {
            for b in 1..=n as u8 {
                debug_assert_eq!(
                    sig[t1.product(a, b) as usize],
                    t2.product(sig[a as usize], sig[b as usize])
                );
            }
        }
    }
    Ok(found)
}

/// One isomorphism class: the canonical representative and how many input
/// tables mapped to it.
#[derive(Debug, Clone)]
pub struct IsoClass {
    pub canonical: LoopTable,
    pub members_seen: u64,
}

impl IsoClass {
    /// Property report of the canonical representative.
    pub fn sample_properties(&self) -> Result<PropertyReport> {
        property_report(&self.canonical)
    }
}

/// Partitions tables by canonical form. Counts and representatives are
/// independent of input order; output is sorted by canonical encoding.
pub fn classify(tables: impl IntoIterator<Item = LoopTable>) -> Result<Vec<IsoClass>> {
    let mut map: HashMap<Vec<u8>, IsoClass> = HashMap::new();
    let mut order: Option<usize> = None;
    for t in tables {
        match order {
            None => order = Some(t.order()),
            Some(n) if n != t.order() => {
                return Err(Error::MixedOrders {
                    first: n,
                    second: t.order(),
                })
            }
            _ => {}
        }
        let canon = canonical_form(&t)?;
        map.entry(canon.cells().to_vec())
            .or_insert_with(|| IsoClass {
                canonical: canon,
                members_seen: 0,
            })
            .members_seen += 1;
    }
    let mut classes: Vec<IsoClass> = map.into_values().collect();
    classes.sort_by(|a, b| a.canonical.cells().cmp(b.canonical.cells()));
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin, cyclic_group};

    fn swap_perm(n: usize, a: u8, b: u8) -> Vec<u8> {
        let mut p: Vec<u8> = (0..=n as u8).collect();
        p.swap(a as usize, b as usize);
        p
    }

    #[test]
    fn fingerprint_is_relabel_invariant() {
        let t = builtin("L5").unwrap();
        let f = fingerprint(&t).unwrap();
        for (a, b) in [(2, 3), (2, 5), (4, 5)] {
            let r = t.relabel(&swap_perm(5, a, b));
            assert_eq!(fingerprint(&r).unwrap(), f);
        }
    }

    #[test]
    fn fingerprint_separates_l5_from_z5() {
        let f5 = fingerprint(&builtin("L5").unwrap()).unwrap();
        let z5 = fingerprint(&cyclic_group(5)).unwrap();
        assert_eq!(z5.associating_triples, 125);
        assert!(f5.associating_triples < 125);
        assert_ne!(f5, z5);
    }

    #[test]
    fn fingerprint_of_trivial_loop() {
        let t = crate::table::LoopTable::build(1, &[vec![1]]).unwrap();
        let f = fingerprint(&t).unwrap();
        assert_eq!(f.order, 1);
        assert_eq!(f.diagonal, vec![1]);
        assert_eq!(f.associating_triples, 1);
    }

    #[test]
    fn canonical_form_is_relabel_invariant_and_idempotent() {
        let t = builtin("L5").unwrap();
        let c = canonical_form(&t).unwrap();
        let relabeled = t.relabel(&swap_perm(5, 4, 5));
        assert_eq!(canonical_form(&relabeled).unwrap(), c);

        let l6 = builtin("L6").unwrap();
        let c6 = canonical_form(&l6).unwrap();
        assert_eq!(canonical_form(&c6).unwrap(), c6);
    }

    #[test]
    fn canonical_form_never_exceeds_input() {
        for name in ["L5", "L6", "LSAIP9", "RSAIP9"] {
            let t = builtin(name).unwrap();
            let c = canonical_form(&t).unwrap();
            assert!(c.cells() <= t.cells(), "{name}");
            assert!(c.is_normal());
            assert!(are_isomorphic(&t, &c).unwrap().is_some(), "{name}");
        }
    }

    #[test]
    fn canonicalizing_permutation_achieves_the_form() {
        for name in ["L5", "L6", "LSAIP9"] {
            let t = builtin(name).unwrap();
            let (c, sigma) = canonical_form_with_perm(&t).unwrap();
            assert_eq!(t.relabel(&sigma), c, "{name}");
        }
    }

    #[test]
    fn isomorphic_relabelings_are_found_and_verified() {
        let t = builtin("L5").unwrap();
        let r = t.relabel(&swap_perm(5, 3, 4));
        let sigma = are_isomorphic(&t, &r).unwrap().expect("isomorphic");
        assert_eq!(sigma[1], 1);
        for a in 1..=5u8 {
            for b in 1..=5u8 {
                assert_eq!(
                    sigma[t.product(a, b) as usize],
                    r.product(sigma[a as usize], sigma[b as usize])
                );
            }
        }
    }

    #[test]
    fn l5_and_z5_are_not_isomorphic() {
        let t = builtin("L5").unwrap();
        assert!(are_isomorphic(&t, &cyclic_group(5)).unwrap().is_none());
    }

    #[test]
    fn l6_is_isomorphic_to_its_transpose_by_identity() {
        let t = builtin("L6").unwrap();
        assert_eq!(t.transpose(), t);
        let sigma = are_isomorphic(&t, &t.transpose()).unwrap().unwrap();
        assert_eq!(sigma, (0..=6).collect::<Vec<u8>>());
    }

    #[test]
    fn classify_merges_relabelings() {
        let t = builtin("L5").unwrap();
        let r = t.relabel(&swap_perm(5, 2, 5));
        let classes = classify(vec![t.clone(), r]).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members_seen, 2);
        assert_eq!(classes[0].canonical, canonical_form(&t).unwrap());
    }

    #[test]
    fn classify_rejects_mixed_orders() {
        let err = classify(vec![builtin("L5").unwrap(), builtin("L6").unwrap()]).unwrap_err();
        assert_eq!(err, Error::MixedOrders { first: 5, second: 6 });
    }

    #[test]
    fn classify_is_input_order_independent() {
        let t = builtin("L6").unwrap();
        let a = t.relabel(&swap_perm(6, 2, 3));
        let b = t.relabel(&swap_perm(6, 4, 6));
        let fwd = classify(vec![t.clone(), a.clone(), b.clone()]).unwrap();
        let rev = classify(vec![b, a, t]).unwrap();
        assert_eq!(fwd.len(), rev.len());
        for (x, y) in fwd.iter().zip(rev.iter()) {
            assert_eq!(x.canonical, y.canonical);
            assert_eq!(x.members_seen, y.members_seen);
        }
    }
}
