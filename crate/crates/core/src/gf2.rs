//! Exact linear algebra over Z/2Z.
//!
//! Vectors carry the ordered list of basis labels they are expressed in, so
//! that mixing up coordinate spaces (edges of a graph vs. edges of its
//! quotient, say) fails loudly instead of silently producing garbage.
//! Subspaces are kept in reduced row echelon form, which makes subspace
//! equality a syntactic comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Shared, ordered list of coordinate labels.
pub type Labels = Arc<Vec<String>>;

pub fn labels_from<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Labels {
    Arc::new(names.into_iter().map(Into::into).collect())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("coordinate spaces differ: [{0}] vs [{1}]")]
    LabelMismatch(String, String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
}

fn label_summary(labels: &Labels) -> String {
    if labels.len() <= 6 {
        labels.join(",")
    } else {
        format!("{},... ({} labels)", labels[..4].join(","), labels.len())
    }
}

fn check_labels(a: &Labels, b: &Labels) -> Result<(), Gf2Error> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Gf2Error::LabelMismatch(label_summary(a), label_summary(b)))
    }
}

/// A vector over Z/2Z, bit-packed, with labelled coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    labels: Labels,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zero(labels: Labels) -> Self {
        let words = vec![0u64; labels.len().div_ceil(64)];
        Gf2Vector { labels, words }
    }

    pub fn from_indices(labels: Labels, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zero(labels);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_labels<'a>(
        labels: Labels,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self, Gf2Error> {
        let mut v = Self::zero(labels);
        for name in names {
            let i = v
                .labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Gf2Error::UnknownLabel(name.to_string()))?;
            v.set(i, true);
        }
        Ok(v)
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len());
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len());
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len());
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    /// Coordinatewise addition (XOR).
    pub fn add(&self, other: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        check_labels(&self.labels, &other.labels)?;
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
        Ok(out)
    }

    /// Standard bilinear form: parity of the common support.
    pub fn dot(&self, other: &Gf2Vector) -> Result<bool, Gf2Error> {
        check_labels(&self.labels, &other.labels)?;
        let mut acc = 0u32;
        for (w, o) in self.words.iter().zip(&other.words) {
            acc ^= (w & o).count_ones() & 1;
        }
        Ok(acc & 1 == 1)
    }

    pub fn leading_index(&self) -> Option<usize> {
        for (k, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.get(i)).collect()
    }

    pub fn support_labels(&self) -> Vec<String> {
        self.support().iter().map(|&i| self.labels[i].clone()).collect()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector{{{}}}", self.support_labels().join("+"))
    }
}

/// A subspace of a labelled Z/2Z coordinate space, stored as a reduced
/// row echelon basis (pivots strictly increasing, each pivot column zero
/// in every other row).
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Subspace {
    labels: Labels,
    rows: Vec<Gf2Vector>,
}

impl Gf2Subspace {
    pub fn trivial(labels: Labels) -> Self {
        Gf2Subspace { labels, rows: Vec::new() }
    }

    pub fn full(labels: Labels) -> Self {
        let rows = (0..labels.len())
            .map(|i| Gf2Vector::from_indices(labels.clone(), [i]))
            .collect();
        Gf2Subspace { labels, rows }
    }

    /// Span of arbitrary vectors, normalised to reduced echelon form.
    pub fn from_spanning(
        labels: Labels,
        vectors: impl IntoIterator<Item = Gf2Vector>,
    ) -> Result<Self, Gf2Error> {
        let mut rows: Vec<Gf2Vector> = Vec::new();
        for v in vectors {
            check_labels(&labels, v.labels())?;
            rows.push(v);
        }
        let rows = reduced_echelon(rows)?;
        Ok(Gf2Subspace { labels, rows })
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Gf2Vector] {
        &self.rows
    }

    /// Reduce `v` modulo the subspace; the result is the canonical coset
    /// representative of `v`.
    pub fn reduce(&self, v: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        check_labels(&self.labels, v.labels())?;
        let mut out = v.clone();
        for row in &self.rows {
            let p = row.leading_index().expect("echelon rows are nonzero");
            if out.get(p) {
                out = out.add(row)?;
            }
        }
        Ok(out)
    }

    /// Membership test: is `v` a Z/2Z-combination of the basis rows?
    pub fn in_span(&self, v: &Gf2Vector) -> Result<bool, Gf2Error> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn subspace_equal(&self, other: &Gf2Subspace) -> Result<bool, Gf2Error> {
        check_labels(&self.labels, &other.labels)?;
        Ok(self.rows == other.rows)
    }

    /// Enumerate every element of the subspace (2^dim vectors).
    pub fn elements(&self) -> Vec<Gf2Vector> {
        let mut out = vec![Gf2Vector::zero(self.labels.clone())];
        for row in &self.rows {
            let mut next = Vec::with_capacity(out.len() * 2);
            for v in &out {
                next.push(v.clone());
                next.push(v.add(row).unwrap());
            }
            out = next;
        }
        out
    }
}

impl fmt::Debug for Gf2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.support_labels().join("+")).collect();
        write!(f, "Gf2Subspace{{dim {}: {}}}", self.dim(), rows.join(" | "))
    }
}

fn reduced_echelon(mut rows: Vec<Gf2Vector>) -> Result<Vec<Gf2Vector>, Gf2Error> {
    let mut basis: Vec<Gf2Vector> = Vec::new();
    for mut v in rows.drain(..) {
        for row in &basis {
            let p = row.leading_index().unwrap();
            if v.get(p) {
                v = v.add(row)?;
            }
        }
        if !v.is_zero() {
            basis.push(v);
        }
    }
    basis.sort_by_key(|r| r.leading_index().unwrap());
    // back-substitute so every pivot column is cleared elsewhere
    for i in (0..basis.len()).rev() {
        let p = basis[i].leading_index().unwrap();
        for j in 0..i {
            if basis[j].get(p) {
                basis[j] = basis[j].add(&basis[i])?;
            }
        }
    }
    Ok(basis)
}

/// Basis of {x : M x = 0} for the matrix whose rows are `rows`.
pub fn kernel_basis(labels: Labels, rows: &[Gf2Vector]) -> Result<Gf2Subspace, Gf2Error> {
    for r in rows {
        check_labels(&labels, r.labels())?;
    }
    let n = labels.len();
    // Gaussian elimination on the rows, remembering pivot columns.
    let echelon = reduced_echelon(rows.to_vec())?;
    let pivots: Vec<usize> = echelon.iter().map(|r| r.leading_index().unwrap()).collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut kernel = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = Gf2Vector::from_indices(labels.clone(), [f]);
        for (row, &p) in echelon.iter().zip(&pivots) {
            if row.get(f) {
                v.flip(p);
            }
        }
        kernel.push(v);
    }
    Gf2Subspace::from_spanning(labels, kernel)
}

/// Group `vectors` into classes under v1 - v2 in `w`. Classes are keyed by
/// the canonical coset representative and returned in representative order.
pub fn coset_partition(
    vectors: &[Gf2Vector],
    w: &Gf2Subspace,
) -> Result<Vec<Vec<Gf2Vector>>, Gf2Error> {
    let mut classes: BTreeMap<Vec<u64>, Vec<Gf2Vector>> = BTreeMap::new();
    for v in vectors {
        let rep = w.reduce(v)?;
        classes.entry(rep.words().to_vec()).or_default().push(v.clone());
    }
    Ok(classes.into_values().collect())
}
