//! Direct evaluators for rectangular permanents and determinants.
//!
//! A column-sweep dynamic program over row subsets handles scalar entries in
//! `O*(2^k)`. For entries in an `r`-dimensional associative algebra, each
//! entry is decomposed in the basis, one scalar sweep runs per basis tuple
//! in `[r]^k`, and the results recombine against ordered basis products.

use std::sync::Arc;

use crate::abp::Abp;
use crate::error::{Error, Result};
use crate::matrix::SquareMat;
use crate::poly::NcPoly;
use crate::scalar::Scalar;
use crate::sets::insert_parity;

/// Rectangular `rows x cols` grid of values.
#[derive(Clone, PartialEq, Debug)]
pub struct Grid<T: Clone> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Grid<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidParameter(
                "grid rows must be nonempty and of equal length".into(),
            ));
        }
        Ok(Grid { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Grid<U> {
        Grid { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

fn sweep<S: Scalar>(a: &Grid<S>, signed: bool) -> Result<S> {
    let k = a.rows();
    let n = a.cols();
    if k > n {
        return Err(Error::InvalidParameter(format!("need rows <= cols, got {k} x {n}")));
    }
    if k >= 24 {
        return Err(Error::SizeGuard { needed: 1u128 << k, limit: 1 << 23 });
    }
    let full = (1usize << k) - 1;
    let mut dp = vec![S::zero(); full + 1];
    dp[0] = S::one();
    for j in 0..n {
        // Column j is either skipped or assigned to one unused row.
        let mut next = dp.clone();
        for (mask, value) in dp.iter().enumerate() {
            if value.is_zero() {
                continue;
            }
            for i in 0..k {
                if mask & (1 << i) != 0 {
                    continue;
                }
                let mut contrib = value.mul(a.get(i, j));
                if signed && insert_parity(mask as u64, i as u32) {
                    contrib = contrib.neg();
                }
                let slot = &mut next[mask | (1 << i)];
                *slot = slot.add(&contrib);
            }
        }
        dp = next;
    }
    Ok(dp[full].clone())
}

/// `O*(2^k)` rectangular permanent of a scalar grid: the sum over injections
/// of row-cell products.
pub fn rect_permanent_dp<S: Scalar>(a: &Grid<S>) -> Result<S> {
    sweep(a, false)
}

/// `O*(2^k)` rectangular determinant of a scalar grid: each injection is
/// signed by the parity of its value pattern, accumulated via insertion
/// signs as columns arrive in increasing order.
pub fn rect_determinant_dp<S: Scalar>(a: &Grid<S>) -> Result<S> {
    sweep(a, true)
}

/// Finite-dimensional associative algebra presented by structure constants:
/// `structure[a][b]` holds the coordinates of `e_a * e_b`. Associativity
/// and the unit laws are verified on all basis triples at construction.
#[derive(Debug)]
pub struct Algebra<S: Scalar> {
    dim: usize,
    unit: Vec<S>,
    structure: Vec<Vec<Vec<S>>>,
    matrix_dim: Option<usize>,
}

impl<S: Scalar> Algebra<S> {
    pub fn new(dim: usize, unit: Vec<S>, structure: Vec<Vec<Vec<S>>>) -> Result<Arc<Self>> {
        if dim == 0
            || unit.len() != dim
            || structure.len() != dim
            || structure.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(Error::InvalidParameter("malformed structure constants".into()));
        }
        let alg = Algebra { dim, unit, structure, matrix_dim: None };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim;
        // (e_a e_b) e_c == e_a (e_b e_c) on every basis triple.
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let left = self.mul_coords(&self.structure[a][b], &basis_coords(dim, c));
                    let right = self.mul_coords(&basis_coords(dim, a), &self.structure[b][c]);
                    if left != right {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        for a in 0..dim {
            let e = basis_coords(dim, a);
            if self.mul_coords(&self.unit, &e) != e || self.mul_coords(&e, &self.unit) != e {
                return Err(Error::InvalidParameter("unit element fails the unit laws".into()));
            }
        }
        Ok(())
    }

    fn mul_coords(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let w = xa.mul(yb);
                for (d, c) in self.structure[a][b].iter().enumerate() {
                    if !c.is_zero() {
                        out[d] = out[d].add(&w.mul(c));
                    }
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Full matrix algebra `M_r` with the matrix-unit basis `E_{ab}`;
    /// `E_{ab} E_{cd} = [b = c] E_{ad}`. Dimension is `r^2`.
    pub fn matrix(r: usize) -> Arc<Self> {
        assert!(r >= 1);
        let dim = r * r;
        let idx = |a: usize, b: usize| a * r + b;
        let mut structure = vec![vec![vec![S::zero(); dim]; dim]; dim];
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        if b == c {
                            structure[idx(a, b)][idx(c, d)][idx(a, d)] = S::one();
                        }
                    }
                }
            }
        }
        let mut unit = vec![S::zero(); dim];
        for a in 0..r {
            unit[idx(a, a)] = S::one();
        }
        let alg = Algebra { dim, unit, structure, matrix_dim: Some(r) };
        debug_assert!(alg.validate().is_ok());
        Arc::new(alg)
    }

    pub fn matrix_dim(&self) -> Option<usize> {
        self.matrix_dim
    }
}

/// Element of an [`Algebra`], stored as its coordinate vector.
#[derive(Clone, Debug)]
pub struct AlgebraElement<S: Scalar> {
    algebra: Arc<Algebra<S>>,
    coords: Vec<S>,
}

impl<S: Scalar> PartialEq for AlgebraElement<S> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) && self.coords == other.coords
    }
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn new(algebra: &Arc<Algebra<S>>, coords: Vec<S>) -> Result<Self> {
        if coords.len() != algebra.dim {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates, got {}",
                algebra.dim,
                coords.len()
            )));
        }
        Ok(AlgebraElement { algebra: Arc::clone(algebra), coords })
    }

    pub fn zero(algebra: &Arc<Algebra<S>>) -> Self {
        AlgebraElement { algebra: Arc::clone(algebra), coords: vec![S::zero(); algebra.dim] }
    }

    pub fn unit(algebra: &Arc<Algebra<S>>) -> Self {
        AlgebraElement { algebra: Arc::clone(algebra), coords: algebra.unit.clone() }
    }

    pub fn basis(algebra: &Arc<Algebra<S>>, i: usize) -> Self {
        AlgebraElement { algebra: Arc::clone(algebra), coords: basis_coords(algebra.dim, i) }
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn algebra(&self) -> &Arc<Algebra<S>> {
        &self.algebra
    }

    fn check_same(&self, rhs: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.algebra, &rhs.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.add(b)).collect();
        Ok(AlgebraElement { algebra: Arc::clone(&self.algebra), coords })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let coords = self.algebra.mul_coords(&self.coords, &rhs.coords);
        Ok(AlgebraElement { algebra: Arc::clone(&self.algebra), coords })
    }

    pub fn scale(&self, c: &S) -> Self {
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.coords.iter().map(|v| v.mul(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Matrix form, for elements of a matrix algebra.
    pub fn to_matrix(&self) -> Result<SquareMat<S>> {
        let r = self
            .algebra
            .matrix_dim
            .ok_or_else(|| Error::InvalidParameter("not a matrix algebra".into()))?;
        let mut m = SquareMat::zero(r);
        for a in 0..r {
            for b in 0..r {
                m.set(a, b, self.coords[a * r + b].clone());
            }
        }
        Ok(m)
    }

    pub fn from_matrix(algebra: &Arc<Algebra<S>>, m: &SquareMat<S>) -> Result<Self> {
        let r = algebra
            .matrix_dim
            .ok_or_else(|| Error::InvalidParameter("not a matrix algebra".into()))?;
        if m.dim() != r {
            return Err(Error::InvalidParameter(format!(
                "matrix dimension {} does not match algebra M_{r}",
                m.dim()
            )));
        }
        let mut coords = Vec::with_capacity(r * r);
        for a in 0..r {
            for b in 0..r {
                coords.push(m.get(a, b).clone());
            }
        }
        AlgebraElement::new(algebra, coords)
    }
}

fn basis_coords<S: Scalar>(dim: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); dim];
    v[i] = S::one();
    v
}

fn common_algebra<S: Scalar>(entries: &Grid<AlgebraElement<S>>) -> Result<Arc<Algebra<S>>> {
    let first = entries.get(0, 0).algebra();
    for i in 0..entries.rows() {
        for j in 0..entries.cols() {
            if !Arc::ptr_eq(entries.get(i, j).algebra(), first) {
                return Err(Error::AlgebraMismatch);
            }
        }
    }
    Ok(Arc::clone(first))
}

/// Rectangular permanent (or, with `signed`, determinant) of a grid with
/// entries in one `r`-dimensional algebra.
///
/// Decomposes every entry in the basis: for each tuple `t` in `[r]^k` the
/// scalar grid of `t_i`-th coordinates goes through the subset sweep, and
/// the value multiplies the ordered basis product `e_{t_1} .. e_{t_k}`.
/// Ordered, because the algebra need not commute.
pub fn rect_permanent_algebra<S: Scalar>(
    entries: &Grid<AlgebraElement<S>>,
    signed: bool,
) -> Result<AlgebraElement<S>> {
    let k = entries.rows();
    let n = entries.cols();
    if k > n {
        return Err(Error::InvalidParameter(format!("need rows <= cols, got {k} x {n}")));
    }
    let algebra = common_algebra(entries)?;
    let r = algebra.dim();
    let tuples = (r as u128).pow(k as u32);
    if tuples > 10_000_000 {
        return Err(Error::SizeGuard { needed: tuples, limit: 10_000_000 });
    }

    let mut acc = AlgebraElement::zero(&algebra);
    let mut tuple = vec![0usize; k];
    loop {
        let scalar_grid = Grid {
            rows: k,
            cols: n,
            data: (0..k)
                .flat_map(|i| {
                    let t = tuple[i];
                    (0..n).map(move |j| entries.get(i, j).coords()[t].clone())
                })
                .collect(),
        };
        let value = sweep(&scalar_grid, signed)?;
        if !value.is_zero() {
            let mut basis_prod = AlgebraElement::basis(&algebra, tuple[0]);
            for &t in &tuple[1..] {
                basis_prod = basis_prod.mul(&AlgebraElement::basis(&algebra, t))?;
            }
            acc = acc.add(&basis_prod.scale(&value))?;
        }
        // Odometer over [r]^k.
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(acc);
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < r {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// Reference evaluator: enumerates all injections and multiplies entries in
/// row order, signing by the inversion parity of the value pattern. Shares
/// nothing with the subset sweep, so it serves as its oracle.
pub fn rect_permanent_algebra_naive<S: Scalar>(
    entries: &Grid<AlgebraElement<S>>,
    signed: bool,
) -> Result<AlgebraElement<S>> {
    let k = entries.rows();
    let n = entries.cols();
    if k > n {
        return Err(Error::InvalidParameter(format!("need rows <= cols, got {k} x {n}")));
    }
    let algebra = common_algebra(entries)?;

    fn rec<S: Scalar>(
        entries: &Grid<AlgebraElement<S>>,
        signed: bool,
        image: &mut Vec<usize>,
        acc: &mut AlgebraElement<S>,
    ) -> Result<()> {
        let k = entries.rows();
        if image.len() == k {
            let mut prod = entries.get(0, image[0]).clone();
            for (i, &col) in image.iter().enumerate().skip(1) {
                prod = prod.mul(entries.get(i, col))?;
            }
            if signed {
                let inversions = (0..k)
                    .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
                    .filter(|&(a, b)| image[a] > image[b])
                    .count();
                if inversions % 2 == 1 {
                    prod = prod.scale(&S::one().neg());
                }
            }
            *acc = acc.add(&prod)?;
            return Ok(());
        }
        for j in 0..entries.cols() {
            if image.contains(&j) {
                continue;
            }
            image.push(j);
            rec(entries, signed, image, acc)?;
            image.pop();
        }
        Ok(())
    }

    let mut acc = AlgebraElement::zero(&algebra);
    let mut image = Vec::with_capacity(k);
    rec(entries, signed, &mut image, &mut acc)?;
    Ok(acc)
}

/// Evaluates a branching program with one algebra element per variable;
/// path products follow the layer order. Scalar edge weights multiply the
/// unit element.
pub fn eval_abp_algebra<S: Scalar>(
    abp: &Abp<S>,
    points: &[AlgebraElement<S>],
) -> Result<AlgebraElement<S>> {
    if abp.sources().len() != 1 || abp.sinks().len() != 1 {
        return Err(Error::InvalidParameter(
            "operation expects a single-source, single-sink program".into(),
        ));
    }
    if (points.len() as u32) < abp.nvars() {
        return Err(Error::MissingAssignment(points.len() as u32));
    }
    if points.is_empty() {
        return Err(Error::InvalidParameter("need at least one evaluation point".into()));
    }
    let algebra = Arc::clone(points[0].algebra());
    for p in points {
        if !Arc::ptr_eq(p.algebra(), &algebra) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let sizes = abp.layer_sizes().to_vec();
    let mut current: Vec<Option<AlgebraElement<S>>> = vec![None; sizes[0]];
    current[abp.sources()[0]] = Some(AlgebraElement::unit(&algebra));
    let mut buckets: Vec<Vec<&crate::abp::Edge<S>>> = vec![Vec::new(); sizes.len() - 1];
    for e in abp.edges() {
        buckets[e.layer].push(e);
    }
    for l in 0..sizes.len() - 1 {
        let mut next: Vec<Option<AlgebraElement<S>>> = vec![None; sizes[l + 1]];
        for e in &buckets[l] {
            let Some(src) = &current[e.from] else { continue };
            let mut edge_val = AlgebraElement::zero(&algebra);
            for (v, c) in e.label.terms() {
                edge_val = edge_val.add(&points[v as usize].scale(c))?;
            }
            let c0 = e.label.constant_part();
            if !c0.is_zero() {
                edge_val = edge_val.add(&AlgebraElement::unit(&algebra).scale(c0))?;
            }
            let contrib = src.mul(&edge_val)?;
            match &mut next[e.to] {
                None => next[e.to] = Some(contrib),
                Some(m) => *m = m.add(&contrib)?,
            }
        }
        current = next;
    }
    Ok(current[abp.sinks()[0]].clone().unwrap_or_else(|| AlgebraElement::zero(&algebra)))
}

/// Evaluates a polynomial with one algebra element per variable, words
/// multiplying left to right.
pub fn eval_poly_algebra<S: Scalar>(
    poly: &NcPoly<S>,
    points: &[AlgebraElement<S>],
) -> Result<AlgebraElement<S>> {
    if points.is_empty() {
        return Err(Error::InvalidParameter("need at least one evaluation point".into()));
    }
    if (points.len() as u32) < poly.nvars() {
        return Err(Error::MissingAssignment(points.len() as u32));
    }
    let algebra = Arc::clone(points[0].algebra());
    let mut acc = AlgebraElement::zero(&algebra);
    for (w, c) in poly.iter() {
        let mut prod = AlgebraElement::unit(&algebra);
        for &v in &w.0 {
            prod = prod.mul(&points[v as usize])?;
        }
        acc = acc.add(&prod.scale(c))?;
    }
    Ok(acc)
}
