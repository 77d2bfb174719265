//! Structure matrices (Cayley tables) of finite groupoids and the
//! single-table operations: validation, products, division, inverses,
//! powers, orders, generators, and subloops.
//!
//! Elements are the integers `1..=n`; in normal form element 1 is the
//! two-sided identity, so row 1 and column 1 read `1..n` in order.

use crate::error::{Axis, Error, Result};

/// Which side of the operation an asymmetric operation acts on.
///
/// For division, `Left` solves `a * x = b` for `x` and `Right` solves
/// `y * a = b` for `y`. For chain products and powers, `Right` folds
/// `(..((l1*l2)*l3)..)*lm` and `Left` folds `lm*(..*(l3*(l2*l1))..)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An n-by-n structure matrix over elements `1..=n`.
///
/// Every row and every column is a permutation of `1..=n`, so the table
/// always describes a quasigroup. The `normal` flag records whether row 1
/// and column 1 are the identity row/column.
///
/// Tables are immutable after construction; all operations are pure.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LoopTable {
    n: usize,
    /// Row-major cells, values 1-based.
    cells: Vec<u8>,
    normal: bool,
}

impl std::fmt::Debug for LoopTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "LoopTable(n={}, normal={})", self.n, self.normal)?;
        for i in 1..=self.n {
            writeln!(
                f,
                "  {}",
                self.row(i)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )?;
        }
        Ok(())
    }
}

/// Coarse classification of a validated table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Latin but without a two-sided identity.
    Quasigroup,
    /// Has a two-sided identity but some element lacks a two-sided inverse.
    Loop,
    /// Invertible and associative.
    Group,
    /// Invertible and non-associative.
    Nafil,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Quasigroup => write!(f, "quasigroup"),
            Classification::Loop => write!(f, "loop"),
            Classification::Group => write!(f, "group"),
            Classification::Nafil => write!(f, "NAFIL"),
        }
    }
}

/// Which axioms the table satisfies, and where associativity first breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomProfile {
    pub has_identity: bool,
    pub invertible: bool,
    pub abelian: bool,
    pub associative: bool,
    /// First triple `(a, b, c)` in row-major order with `(a*b)*c != a*(b*c)`.
    pub assoc_counterexample: Option<(u8, u8, u8)>,
    pub classification: Classification,
}

/// Left and right inverse maps of a normal table, plus the two-sided map
/// when they coincide pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseMaps {
    /// `left[a-1] * a = 1`
    left: Vec<u8>,
    /// `a * right[a-1] = 1`
    right: Vec<u8>,
    two_sided: Option<Vec<u8>>,
}

impl InverseMaps {
    pub fn left_of(&self, a: u8) -> u8 {
        self.left[a as usize - 1]
    }

    pub fn right_of(&self, a: u8) -> u8 {
        self.right[a as usize - 1]
    }

    /// The unique two-sided inverse of `a`, if the table is invertible.
    pub fn two_sided_of(&self, a: u8) -> Option<u8> {
        self.two_sided.as_ref().map(|m| m[a as usize - 1])
    }

    /// True iff every element has a two-sided inverse (axiom A3).
    pub fn is_invertible(&self) -> bool {
        self.two_sided.is_some()
    }

    pub fn two_sided_map(&self) -> Option<&[u8]> {
        self.two_sided.as_deref()
    }
}

/// Element-level structure of a normal table: orders, p-orders, generators,
/// and the derived unipotent / power-associative / monassociative flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralProfile {
    /// Every diagonal entry is 1.
    pub unipotent: bool,
    /// Unipotent and every non-identity element generates a subloop of order 2.
    pub monassociative: bool,
    /// Every monogenic subloop is associative.
    pub power_associative: bool,
    /// Some single element generates the whole table.
    pub monogenic: bool,
    /// Elements whose generated subloop is the whole set, ascending.
    pub generators: Vec<u8>,
    /// `element_orders[a-1]` = size of the subloop generated by `a`.
    pub element_orders: Vec<u8>,
    /// `(left, right)` p-orders per element; `None` when no power `<= n`
    /// reaches the identity.
    pub p_orders: Vec<(Option<u8>, Option<u8>)>,
}

impl LoopTable {
    /// Validates an `n x n` matrix and wraps it as a table.
    ///
    /// Checks dimensions, entry ranges, and the Latin property on rows and
    /// columns; computes the `normal` flag.
    pub fn build(n: usize, rows: &[Vec<u8>]) -> Result<Self> {
        if n == 0 || rows.len() != n {
            return Err(Error::BadDimensions {
                n,
                rows: rows.len(),
                cols: rows.first().map_or(0, |r| r.len()),
            });
        }
        for row in rows {
            if row.len() != n {
                return Err(Error::BadDimensions {
                    n,
                    rows: rows.len(),
                    cols: row.len(),
                });
            }
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v == 0 || v as usize > n {
                    return Err(Error::OutOfRange {
                        row: i + 1,
                        col: j + 1,
                        value: v as usize,
                        n,
                    });
                }
                cells.push(v);
            }
        }
        let table = LoopTable {
            n,
            cells,
            normal: false,
        };
        table.check_latin()?;
        Ok(LoopTable {
            normal: table.compute_normal(),
            ..table
        })
    }

    /// Wraps cells the caller guarantees to be Latin (enumeration leaves,
    /// relabelings of validated tables). Validated in debug builds.
    pub(crate) fn from_valid_cells(n: usize, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), n * n);
        let t = LoopTable {
            n,
            cells,
            normal: false,
        };
        debug_assert!(t.check_latin().is_ok());
        let normal = t.compute_normal();
        LoopTable { normal, ..t }
    }

    fn check_latin(&self) -> Result<()> {
        let n = self.n;
        let mut seen = vec![false; n + 1];
        for i in 1..=n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 1..=n {
                let v = self.get(i, j);
                if seen[v as usize] {
                    return Err(Error::NotLatin {
                        axis: Axis::Row,
                        index: i,
                        value: v,
                    });
                }
                seen[v as usize] = true;
            }
        }
        for j in 1..=n {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 1..=n {
                let v = self.get(i, j);
                if seen[v as usize] {
                    return Err(Error::NotLatin {
                        axis: Axis::Column,
                        index: j,
                        value: v,
                    });
                }
                seen[v as usize] = true;
            }
        }
        Ok(())
    }

    fn compute_normal(&self) -> bool {
        (1..=self.n).all(|k| self.get(1, k) == k as u8 && self.get(k, 1) == k as u8)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    /// Raw cell lookup, 1-based in both coordinates.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.cells[(i - 1) * self.n + (j - 1)]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.cells[(i - 1) * self.n..i * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.cells.chunks(self.n)
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// `a * b`.
    #[inline]
    pub fn product(&self, a: u8, b: u8) -> u8 {
        self.get(a as usize, b as usize)
    }

    /// Unique solution of `a * x = b` (`Left`) or `y * a = b` (`Right`).
    pub fn divide(&self, side: Side, a: u8, b: u8) -> u8 {
        match side {
            Side::Left => {
                let row = self.row(a as usize);
                row.iter().position(|&v| v == b).map(|j| j as u8 + 1).unwrap()
            }
            Side::Right => (1..=self.n)
                .find(|&i| self.get(i, a as usize) == b)
                .map(|i| i as u8)
                .unwrap(),
        }
    }

    /// The two-sided identity element, if one exists.
    pub fn identity_element(&self) -> Option<u8> {
        (1..=self.n)
            .find(|&e| {
                (1..=self.n).all(|k| self.get(e, k) == k as u8 && self.get(k, e) == k as u8)
            })
            .map(|e| e as u8)
    }

    /// Relabels the identity to element 1 and reorders entries accordingly.
    ///
    /// The relabeling is the transposition swapping the identity's label
    /// with 1, so normalizing an already-normal table is the identity map.
    pub fn normalize(&self) -> Result<Self> {
        let e = self.identity_element().ok_or(Error::NoIdentity)?;
        if e == 1 {
            return Ok(self.clone());
        }
        let mut perm: Vec<u8> = (0..=self.n as u8).collect();
        perm.swap(1, e as usize);
        Ok(self.relabel(&perm))
    }

    /// Applies the bijection `perm` (1-based, `perm[old] = new`) to rows,
    /// columns, and values at once.
    pub fn relabel(&self, perm: &[u8]) -> Self {
        debug_assert_eq!(perm.len(), self.n + 1);
        let n = self.n;
        let mut cells = vec![0u8; n * n];
        for i in 1..=n {
            for j in 1..=n {
                let (ni, nj) = (perm[i] as usize, perm[j] as usize);
                cells[(ni - 1) * n + (nj - 1)] = perm[self.get(i, j) as usize];
            }
        }
        Self::from_valid_cells(n, cells)
    }

    /// `entries'[i][j] = entries[j][i]`; swaps left- and right-handed
    /// properties (LBol with RBol, LIP with RIP, and so on).
    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut cells = vec![0u8; n * n];
        for i in 1..=n {
            for j in 1..=n {
                cells[(j - 1) * n + (i - 1)] = self.get(i, j);
            }
        }
        Self::from_valid_cells(n, cells)
    }

    /// Left and right inverse maps; requires normal form.
    pub fn inverse_maps(&self) -> Result<InverseMaps> {
        if !self.normal {
            return Err(Error::NotNormal);
        }
        let n = self.n;
        let mut left = vec![0u8; n];
        let mut right = vec![0u8; n];
        for a in 1..=n {
            // x * a = 1 and a * y = 1
            left[a - 1] = self.divide(Side::Right, a as u8, 1);
            right[a - 1] = self.divide(Side::Left, a as u8, 1);
        }
        let two_sided = (left == right).then(|| left.clone());
        Ok(InverseMaps {
            left,
            right,
            two_sided,
        })
    }

    fn find_assoc_counterexample(&self) -> Option<(u8, u8, u8)> {
        let n = self.n as u8;
        for a in 1..=n {
            for b in 1..=n {
                let ab = self.product(a, b);
                for c in 1..=n {
                    if self.product(ab, c) != self.product(a, self.product(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.find_assoc_counterexample().is_none()
    }

    pub fn is_abelian(&self) -> bool {
        (1..=self.n).all(|i| (i + 1..=self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Decides axioms A2, A3, A5, A6 by exhaustive scans and classifies the
    /// table. Associativity is checked over all n^3 triples.
    pub fn axiom_profile(&self) -> AxiomProfile {
        let identity = self.identity_element();
        let has_identity = identity.is_some();
        let invertible = match identity {
            None => false,
            Some(e) => (1..=self.n as u8).all(|a| {
                let b = self.divide(Side::Left, a, e);
                self.product(b, a) == e
            }),
        };
        let assoc_counterexample = self.find_assoc_counterexample();
        let associative = assoc_counterexample.is_none();
        let classification = match (has_identity, invertible, associative) {
            (false, _, _) => Classification::Quasigroup,
            (true, false, _) => Classification::Loop,
            (true, true, true) => Classification::Group,
            (true, true, false) => Classification::Nafil,
        };
        AxiomProfile {
            has_identity,
            invertible,
            abelian: self.is_abelian(),
            associative,
            assoc_counterexample,
            classification,
        }
    }

    /// Folds a non-empty factor sequence into its left or right product.
    pub fn chain_product(&self, side: Side, seq: &[u8]) -> Result<u8> {
        let (&first, rest) = seq.split_first().ok_or(Error::EmptySequence)?;
        let mut acc = first;
        for &x in rest {
            acc = match side {
                Side::Right => self.product(acc, x),
                Side::Left => self.product(x, acc),
            };
        }
        Ok(acc)
    }

    /// The m-th left or right power of `a`, via the recursion
    /// `a^(m) = a^(m-1) * a` (right) or `a * a^(m-1)` (left); `m >= 1`.
    pub fn power(&self, a: u8, m: u32, side: Side) -> u8 {
        debug_assert!(m >= 1);
        let mut acc = a;
        for _ in 1..m {
            acc = match side {
                Side::Right => self.product(acc, a),
                Side::Left => self.product(a, acc),
            };
        }
        acc
    }

    /// Least `m <= n` with the m-th power of `a` equal to 1, if any.
    pub fn p_order(&self, a: u8, side: Side) -> Result<Option<u8>> {
        if !self.normal {
            return Err(Error::NotNormal);
        }
        let mut acc = a;
        for m in 1..=self.n {
            if acc == 1 {
                return Ok(Some(m as u8));
            }
            acc = match side {
                Side::Right => self.product(acc, a),
                Side::Left => self.product(a, acc),
            };
        }
        Ok(None)
    }

    /// Smallest product-closed superset of `seed` together with the identity.
    ///
    /// Product closure suffices for a subloop here: left and right
    /// translations restrict to bijections of a finite product-closed set,
    /// so divisions and inverses never leave it.
    pub fn generated_subloop(&self, seed: &[u8]) -> Result<Vec<u8>> {
        if !self.normal {
            return Err(Error::NotNormal);
        }
        let n = self.n;
        let mut member = vec![false; n + 1];
        let mut stack: Vec<u8> = Vec::with_capacity(n);
        let mut set: Vec<u8> = Vec::with_capacity(n);
        for &x in std::iter::once(&1u8).chain(seed) {
            debug_assert!(x >= 1 && (x as usize) <= n);
            if !member[x as usize] {
                member[x as usize] = true;
                stack.push(x);
                set.push(x);
            }
        }
        while let Some(x) = stack.pop() {
            for idx in 0..set.len() {
                let y = set[idx];
                for p in [self.product(x, y), self.product(y, x)] {
                    if !member[p as usize] {
                        member[p as usize] = true;
                        stack.push(p);
                        set.push(p);
                    }
                }
            }
        }
        set.sort_unstable();
        Ok(set)
    }

    /// All product-closed subsets containing 1, bottom-up: closures of the
    /// singletons, then closures of pairwise unions of known subloops,
    /// iterated to a fixpoint. Sorted by size then lexicographically.
    pub fn all_subloops(&self) -> Result<Vec<Vec<u8>>> {
        if !self.normal {
            return Err(Error::NotNormal);
        }
        let mut known: Vec<Vec<u8>> = Vec::new();
        for k in 1..=self.n as u8 {
            let s = self.generated_subloop(&[k])?;
            if !known.contains(&s) {
                known.push(s);
            }
        }
        loop {
            let mut added = false;
            let len = known.len();
            for a in 0..len {
                for b in a + 1..len {
                    let union: Vec<u8> = {
                        let mut u = known[a].clone();
                        u.extend_from_slice(&known[b]);
                        u
                    };
                    let s = self.generated_subloop(&union)?;
                    if !known.contains(&s) {
                        known.push(s);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        known.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(known)
    }

    /// Restricts the table to a product-closed subset containing 1,
    /// relabeling elements order-preservingly to `1..=m`.
    pub fn subtable(&self, elements: &[u8]) -> Self {
        let m = elements.len();
        let mut new_label = vec![0u8; self.n + 1];
        for (idx, &e) in elements.iter().enumerate() {
            new_label[e as usize] = idx as u8 + 1;
        }
        let mut cells = vec![0u8; m * m];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                let p = new_label[self.product(a, b) as usize];
                debug_assert!(p != 0, "subset is not product-closed");
                cells[i * m + j] = p;
            }
        }
        Self::from_valid_cells(m, cells)
    }

    /// Orders, p-orders, generators, and the structural flags. Requires a
    /// normal invertible table.
    pub fn structural_profile(&self) -> Result<StructuralProfile> {
        if !self.normal {
            return Err(Error::NotNormal);
        }
        if !self.inverse_maps()?.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Ok(self.structure_unchecked())
    }

    /// Same computation as [`structural_profile`](Self::structural_profile)
    /// without the invertibility requirement; every field is well defined
    /// for any normal table.
    pub(crate) fn structure_unchecked(&self) -> StructuralProfile {
        debug_assert!(self.normal);
        let n = self.n;
        let unipotent = (1..=n).all(|k| self.get(k, k) == 1);
        let mut element_orders = Vec::with_capacity(n);
        let mut p_orders = Vec::with_capacity(n);
        let mut generators = Vec::new();
        let mut power_associative = true;
        let mut monassociative = unipotent;
        for a in 1..=n as u8 {
            let gen = self.generated_subloop(&[a]).unwrap();
            element_orders.push(gen.len() as u8);
            if gen.len() == n {
                generators.push(a);
            }
            if power_associative && !self.subtable(&gen).is_associative() {
                power_associative = false;
            }
            if a != 1 && gen.len() != 2 {
                monassociative = false;
            }
            let left = self.p_order(a, Side::Left).unwrap();
            let right = self.p_order(a, Side::Right).unwrap();
            p_orders.push((left, right));
        }
        StructuralProfile {
            unipotent,
            monassociative,
            power_associative,
            monogenic: !generators.is_empty(),
            generators,
            element_orders,
            p_orders,
        }
    }
}
