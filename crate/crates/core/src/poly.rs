//! Sparse exact polynomials, noncommutative by default.
//!
//! A [`Word`] is an ordered sequence of variable ids; an [`NcPoly`] maps
//! words to nonzero coefficients. Commutative polynomials reuse the same
//! representation with words kept sorted at insertion, so one codebase
//! serves both settings. These expansions are the ground truth the
//! branching-program constructions are checked against.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Hard ceiling on stored monomials for any single expansion. Reference
/// expansions must stay exact, so oversized requests fail instead of
/// truncating.
pub const TERM_GUARD: u64 = 10_000_000;

pub(crate) fn check_guard(needed: u128) -> Result<()> {
    if needed > TERM_GUARD as u128 {
        return Err(Error::SizeGuard { needed, limit: TERM_GUARD });
    }
    Ok(())
}

/// Noncommutative monomial: the ordered sequence of variable ids on a path.
/// Length equals degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(v: u32) -> Self {
        Word(vec![v])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn reversed(&self) -> Self {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn sorted(&self) -> Self {
        let mut v = self.0.clone();
        v.sort_unstable();
        Word(v)
    }

    pub fn appended(&self, v: u32) -> Self {
        let mut w = self.0.clone();
        w.push(v);
        Word(w)
    }

    pub fn is_multilinear(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.0.iter().all(|v| seen.insert(*v))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|v| format!("y_{{{}}}", v + 1)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Variable ids for a `rows x cols` symbolic matrix, row-major:
/// cell `(i, j)` (0-based) gets id `i*cols + j`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RectVars {
    pub rows: u32,
    pub cols: u32,
}

impl RectVars {
    pub fn new(rows: u32, cols: u32) -> Self {
        RectVars { rows, cols }
    }

    pub fn var(&self, row: u32, col: u32) -> u32 {
        debug_assert!(row < self.rows && col < self.cols);
        row * self.cols + col
    }

    pub fn cell(&self, id: u32) -> (u32, u32) {
        (id / self.cols, id % self.cols)
    }

    pub fn nvars(&self) -> u32 {
        self.rows * self.cols
    }

    /// 1-based cell label, e.g. `y_{2,3}`.
    pub fn label(&self, id: u32) -> String {
        let (r, c) = self.cell(id);
        format!("y_{{{},{}}}", r + 1, c + 1)
    }
}

/// Sparse polynomial over noncommuting (or, with the flag, commuting)
/// variables. No zero coefficients are stored; commutative words are kept
/// sorted, so equality is canonical in both modes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcPoly<S: Scalar> {
    terms: BTreeMap<Word, S>,
    nvars: u32,
    commutative: bool,
}

impl<S: Scalar> NcPoly<S> {
    pub fn new(nvars: u32) -> Self {
        NcPoly { terms: BTreeMap::new(), nvars, commutative: false }
    }

    pub fn new_commutative(nvars: u32) -> Self {
        NcPoly { terms: BTreeMap::new(), nvars, commutative: true }
    }

    pub fn constant(c: S, nvars: u32, commutative: bool) -> Self {
        let mut p = NcPoly { terms: BTreeMap::new(), nvars, commutative };
        p.add_term(Word::empty(), c);
        p
    }

    pub fn one(nvars: u32) -> Self {
        Self::constant(S::one(), nvars, false)
    }

    pub fn nvars(&self) -> u32 {
        self.nvars
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> S {
        let key = if self.commutative { w.sorted() } else { w.clone() };
        self.terms.get(&key).cloned().unwrap_or_else(S::zero)
    }

    /// Adds `c * w`, canonicalizing the word in commutative mode and
    /// dropping the entry when the coefficient cancels.
    pub fn add_term(&mut self, w: Word, c: S) {
        if c.is_zero() {
            return;
        }
        debug_assert!(w.0.iter().all(|&v| v < self.nvars), "variable id out of range");
        let key = if self.commutative { w.sorted() } else { w };
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn joined_header(&self, rhs: &Self) -> (u32, bool) {
        assert_eq!(self.commutative, rhs.commutative, "mixed commutativity modes");
        (self.nvars.max(rhs.nvars), self.commutative)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (nvars, comm) = self.joined_header(rhs);
        let mut out = NcPoly { terms: self.terms.clone(), nvars, commutative: comm };
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect();
        NcPoly { terms, nvars: self.nvars, commutative: self.commutative }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return NcPoly { terms: BTreeMap::new(), ..self.clone() };
        }
        let terms = self.terms.iter().map(|(w, k)| (w.clone(), k.mul(c))).collect();
        NcPoly { terms, nvars: self.nvars, commutative: self.commutative }
    }

    /// Product; words concatenate left to right.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let (nvars, comm) = self.joined_header(rhs);
        check_guard(self.terms.len() as u128 * rhs.terms.len() as u128)?;
        let mut out = NcPoly { terms: BTreeMap::new(), nvars, commutative: comm };
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let mut w = wa.0.clone();
                w.extend_from_slice(&wb.0);
                out.add_term(Word(w), ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// Coefficient-wise product: `[w](f∘g) = [w]f * [w]g`.
    pub fn hadamard(&self, rhs: &Self) -> Self {
        let (nvars, comm) = self.joined_header(rhs);
        let mut out = NcPoly { terms: BTreeMap::new(), nvars, commutative: comm };
        for (w, c) in &self.terms {
            if let Some(d) = rhs.terms.get(w) {
                out.add_term(w.clone(), c.mul(d));
            }
        }
        out
    }

    /// Reverses every word.
    pub fn reverse(&self) -> Self {
        let mut out = NcPoly { terms: BTreeMap::new(), nvars: self.nvars, commutative: self.commutative };
        for (w, c) in &self.terms {
            out.add_term(w.reversed(), c.clone());
        }
        out
    }

    /// `Some(k)` when every stored word has degree `k` (the zero polynomial
    /// reports degree 0).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for w in self.terms.keys() {
            match deg {
                None => deg = Some(w.degree()),
                Some(d) if d == w.degree() => {}
                Some(_) => return None,
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Sum over all positional permutations of each word.
    pub fn symmetrize(&self) -> Result<Self> {
        let k = self.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        let fact: u128 = (1..=k as u128).product();
        check_guard(fact * self.terms.len() as u128)?;
        let mut out = NcPoly { terms: BTreeMap::new(), nvars: self.nvars, commutative: self.commutative };
        let positions: Vec<usize> = (0..k).collect();
        for perm in permutations_of(&positions) {
            for (w, c) in &self.terms {
                let permuted = Word(perm.iter().map(|&p| w.0[p]).collect());
                out.add_term(permuted, c.clone());
            }
        }
        Ok(out)
    }

    /// Replaces the variable at position `j` of every word by the grid
    /// variable in row `j`, turning a degree-`k` polynomial over `n`
    /// variables into one over the `k x n` grid.
    pub fn set_multilinearize(&self, grid: RectVars) -> Result<Self> {
        let k = self.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if grid.rows as usize != k || grid.cols < self.nvars {
            return Err(Error::InvalidParameter(format!(
                "grid {}x{} does not fit degree {} over {} variables",
                grid.rows, grid.cols, k, self.nvars
            )));
        }
        let mut out = NcPoly { terms: BTreeMap::new(), nvars: grid.nvars(), commutative: self.commutative };
        for (w, c) in &self.terms {
            let mapped = Word(
                w.0.iter()
                    .enumerate()
                    .map(|(j, &v)| grid.var(j as u32, v))
                    .collect(),
            );
            out.add_term(mapped, c.clone());
        }
        Ok(out)
    }

    /// Evaluates at a point, one scalar per variable id.
    pub fn substitute(&self, point: &[S]) -> Result<S> {
        if (point.len() as u32) < self.nvars {
            return Err(Error::MissingAssignment(point.len() as u32));
        }
        let mut acc = S::zero();
        for (w, c) in &self.terms {
            let mut term = c.clone();
            for &v in &w.0 {
                term = term.mul(&point[v as usize]);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Zero/nonzero pattern, ignoring coefficient values.
    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn same_support(&self, rhs: &Self) -> bool {
        self.terms.len() == rhs.terms.len()
            && self.terms.keys().zip(rhs.terms.keys()).all(|(a, b)| a == b)
    }
}

impl<S: Scalar> fmt::Display for NcPoly<S> {
    /// Canonical dump: one term per line, `coef  word`, words in
    /// lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "{}  {}", c, w)?;
        }
        Ok(())
    }
}

/// All permutations of a slice, lexicographic by index positions.
pub fn permutations_of<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    use itertools::Itertools;
    items.iter().cloned().permutations(items.len()).collect()
}

/// Parity of a permutation given as 0-based images: true when odd.
/// Counted independently via inversions.
pub fn permutation_parity(perm: &[u32]) -> bool {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// A commutative polynomial used as a coefficient. This is what lets a
/// branching program over one alphabet carry symbolic weights in another
/// alphabet through a Hadamard product before flattening.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyScalar<S: Scalar>(pub NcPoly<S>);

impl<S: Scalar> PolyScalar<S> {
    pub fn constant(c: S) -> Self {
        PolyScalar(NcPoly::constant(c, 0, true))
    }

    pub fn variable(id: u32, nvars: u32) -> Self {
        let mut p = NcPoly::new_commutative(nvars);
        p.add_term(Word::single(id), S::one());
        PolyScalar(p)
    }

    pub fn as_constant(&self) -> Option<S> {
        if self.0.is_zero() {
            return Some(S::zero());
        }
        if self.0.num_terms() == 1 {
            if let Some((w, c)) = self.0.iter().next() {
                if w.degree() == 0 {
                    return Some(c.clone());
                }
            }
        }
        None
    }
}

impl<S: Scalar> fmt::Display for PolyScalar<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(w, c)| if w.degree() == 0 { format!("{c}") } else { format!("{c}*{w}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar> Scalar for PolyScalar<S> {
    fn zero() -> Self {
        PolyScalar(NcPoly::new_commutative(0))
    }

    fn one() -> Self {
        Self::constant(S::one())
    }

    fn from_int(v: i64) -> Self {
        Self::constant(S::from_int(v))
    }

    fn add(&self, rhs: &Self) -> Self {
        PolyScalar(self.0.add(&rhs.0))
    }

    fn sub(&self, rhs: &Self) -> Self {
        PolyScalar(self.0.sub(&rhs.0))
    }

    fn mul(&self, rhs: &Self) -> Self {
        PolyScalar(self.0.mul(&rhs.0).expect("polynomial coefficient overflowed term guard"))
    }

    fn neg(&self) -> Self {
        PolyScalar(self.0.neg())
    }

    fn inv(&self) -> Result<Self> {
        match self.as_constant() {
            Some(c) => Ok(Self::constant(c.inv()?)),
            None => Err(Error::NotInvertible("non-constant polynomial".into())),
        }
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}
