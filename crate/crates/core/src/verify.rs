//! Verification suites: every construction checked against its brute-force
//! expansion on a parameter grid, plus randomized contract checks for the
//! product and matrix-evaluation operations. The CLI `verify` subcommand
//! and the acceptance test suite both run these.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abp::{hadamard_abp, Abp, LinForm};
use crate::algebra::{
    rect_determinant_dp, rect_permanent_algebra, rect_permanent_algebra_naive, Algebra,
    AlgebraElement, Grid,
};
use crate::apps::{
    count_k_paths_direct, count_k_paths_direct_matrix, count_k_paths_via_rdet, enumerate_k_paths,
    Digraph,
};
use crate::constructions::{
    default_alphas, elementary_symmetric_nc_abp, insertion_sign_chain, nc_determinant_abp,
    rect_determinant_abp, rect_permanent_nc_abp, s_star_abp, weak_s_star_abp,
};
use crate::oracle;
use crate::poly::{permutation_parity, permutations_of, Word};
use crate::scalar::{smallest_prime_greater, Fp, Rational, Scalar};
use crate::sets::binomial_tail;

/// Result of one suite: how many checks ran and which failed.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &str) -> Self {
        SuiteOutcome { name: name.into(), cases: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !cond {
            self.failures.push(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.cases += 1;
        self.failures.push(msg);
    }
}

fn q(v: i64) -> Rational {
    Rational::from_int(v)
}

fn rand_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4))
}

/// Expansion equality for the multilinear-support construction over the
/// whole `(n, k)` grid.
pub fn verify_s_star(max_n: u32, max_k: u32) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("s-star");
    for n in 2..=max_n {
        for k in 1..=n.min(max_k) {
            match (s_star_abp::<Rational>(n, k), oracle::s_star::<Rational>(n, k)) {
                (Ok(abp), Ok(expect)) => match abp.expand(false) {
                    Ok(p) => out.check(p == expect, || format!("S*({n},{k}) expansion differs")),
                    Err(e) => out.fail(format!("S*({n},{k}) expansion failed: {e}")),
                },
                (Err(e), _) | (_, Err(e)) => out.fail(format!("S*({n},{k}) failed: {e}")),
            }
        }
    }
    out
}

/// Node-count bound `2 (n + ceil(k/2) + 2) C(n, <= ceil(k/2))` over the grid.
pub fn verify_s_star_size(max_n: u32, max_k: u32) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("s-star-size");
    for n in 2..=max_n {
        for k in 1..=n.min(max_k) {
            match s_star_abp::<Rational>(n, k) {
                Ok(abp) => {
                    let h = k.div_ceil(2);
                    let bound = 2 * (n as u128 + h as u128 + 2) * binomial_tail(n as u64, h as u64);
                    out.check(
                        (abp.node_count() as u128) <= bound,
                        || format!("S*({n},{k}) has {} nodes, bound {bound}", abp.node_count()),
                    );
                }
                Err(e) => out.fail(format!("S*({n},{k}) failed: {e}")),
            }
        }
    }
    out
}

/// Expansion equality for the rectangular-permanent rename of the program.
pub fn verify_rect_permanent(max_n: u32, max_k: u32) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("rper-nc");
    for n in 2..=max_n {
        for k in 1..=n.min(max_k) {
            match (rect_permanent_nc_abp::<Rational>(k, n), oracle::rect_permanent(k, n, false)) {
                (Ok(abp), Ok(expect)) => match abp.expand(false) {
                    Ok(p) => out.check(p == expect, || format!("rper({k},{n}) expansion differs")),
                    Err(e) => out.fail(format!("rper({k},{n}) expansion failed: {e}")),
                },
                (Err(e), _) | (_, Err(e)) => out.fail(format!("rper({k},{n}) failed: {e}")),
            }
        }
    }
    out
}

/// Exact node count `2^k` and expansion equality for the noncommutative
/// determinant program.
pub fn verify_nc_determinant(max_k: u32) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("ncdet");
    for k in 1..=max_k {
        match (nc_determinant_abp::<Rational>(k), oracle::determinant::<Rational>(k)) {
            (Ok(abp), Ok(expect)) => {
                out.check(abp.node_count() == 1 << k, || {
                    format!("ncdet({k}) has {} nodes, want {}", abp.node_count(), 1u64 << k)
                });
                match abp.expand(false) {
                    Ok(p) => out.check(p == expect, || format!("ncdet({k}) expansion differs")),
                    Err(e) => out.fail(format!("ncdet({k}) expansion failed: {e}")),
                }
            }
            (Err(e), _) | (_, Err(e)) => out.fail(format!("ncdet({k}) failed: {e}")),
        }
    }
    out
}

/// Insertion-sign chains equal inversion parity, exhaustively over `S_k`.
pub fn verify_insertion_signs(max_k: u32) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("signs");
    for k in 1..=max_k {
        let positions: Vec<u32> = (0..k).collect();
        for perm in permutations_of(&positions) {
            let expect = if permutation_parity(&perm) { -1 } else { 1 };
            out.check(insertion_sign_chain(&perm) == expect, || {
                format!("sign chain differs from parity on {perm:?}")
            });
        }
    }
    out
}

/// Permutation-expansion determinant, independent of every program path.
fn dense_det<S: Scalar>(m: &[Vec<S>]) -> S {
    let k = m.len();
    let positions: Vec<u32> = (0..k as u32).collect();
    let mut acc = S::zero();
    for perm in permutations_of(&positions) {
        let mut term: S = crate::scalar::sign_scalar(permutation_parity(&perm));
        for (row, &col) in perm.iter().enumerate() {
            term = term.mul(&m[row][col as usize]);
        }
        acc = acc.add(&term);
    }
    acc
}

fn weak_equivalence_case<S: Scalar>(out: &mut SuiteOutcome, n: u32, k: u32, alphas: &[S], tag: &str) {
    let abp = match weak_s_star_abp::<S>(n, k, alphas) {
        Ok(b) => b,
        Err(e) => return out.fail(format!("weak({n},{k}) {tag}: {e}")),
    };
    let p = match abp.expand(false) {
        Ok(p) => p,
        Err(e) => return out.fail(format!("weak({n},{k}) {tag} expansion: {e}")),
    };
    // Every word in [n]^k: nonzero coefficient iff multilinear, with the
    // value pinned to the explicit alpha determinant.
    let mut word = vec![0u32; k as usize];
    loop {
        let w = Word(word.clone());
        let coeff = p.coeff(&w);
        let vand: Vec<Vec<S>> = (1..=k)
            .map(|power| {
                word.iter()
                    .map(|&i| {
                        let mut acc = alphas[i as usize].clone();
                        for _ in 1..power {
                            acc = acc.mul(&alphas[i as usize]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let expect = dense_det(&vand);
        out.check(coeff == expect, || format!("weak({n},{k}) {tag}: coefficient of {w} differs"));
        out.check(
            (!coeff.is_zero()) == w.is_multilinear(),
            || format!("weak({n},{k}) {tag}: support wrong at {w}"),
        );
        // Odometer over [n]^k.
        let mut pos = word.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            word[pos] += 1;
            if word[pos] < n {
                break;
            }
            word[pos] = 0;
        }
    }
}

/// Weak equivalence over the rationals and over `F_p`, `p` the smallest
/// prime above `n`: support is exactly the multilinear words and every
/// coefficient equals the explicit alpha determinant.
pub fn verify_weak_equivalence(max_n: u32, max_k: u32) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("weak");
    for n in 2..=max_n {
        for k in 1..=n.min(max_k) {
            weak_equivalence_case::<Rational>(&mut out, n, k, &default_alphas(n), "Q");
            let p = smallest_prime_greater(n as u64);
            let alphas: Vec<Fp> = (1..=n as i64).map(|v| Fp::new(v, p)).collect();
            weak_equivalence_case::<Fp>(&mut out, n, k, &alphas, &format!("F_{p}"));
        }
    }
    out
}

/// The Hadamard-filter rectangular determinant program, the subset sweep,
/// and the brute-force expansion agree on random rational matrices.
pub fn verify_rect_determinant(max_k: u32, max_n: u32, trials: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("rdet");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 1..=max_k {
        for n in k..=max_n {
            let abp = match rect_determinant_abp::<Rational>(k, n) {
                Ok(b) => b,
                Err(e) => {
                    out.fail(format!("rdet({k},{n}) build: {e}"));
                    continue;
                }
            };
            let brute = match oracle::rect_determinant::<Rational>(k, n) {
                Ok(p) => p,
                Err(e) => {
                    out.fail(format!("rdet({k},{n}) oracle: {e}"));
                    continue;
                }
            };
            for trial in 0..trials {
                let cells: Vec<Vec<Rational>> = (0..k)
                    .map(|_| (0..n).map(|_| rand_rational(&mut rng)).collect())
                    .collect();
                let flat: Vec<Rational> = cells.iter().flatten().cloned().collect();
                let grid = Grid::from_rows(cells).unwrap();
                let via_abp = abp.eval_scalar(&flat);
                let via_dp = rect_determinant_dp(&grid);
                let via_brute = brute.substitute(&flat);
                match (via_abp, via_dp, via_brute) {
                    (Ok(a), Ok(b), Ok(c)) => out.check(a == b && b == c, || {
                        format!("rdet({k},{n}) trial {trial}: {a} vs {b} vs {c}")
                    }),
                    _ => out.fail(format!("rdet({k},{n}) trial {trial}: evaluation failed")),
                }
            }
        }
    }
    out
}

/// Random strictly homogeneous program with the given layer widths profile.
pub fn random_homogeneous_abp(
    rng: &mut ChaCha8Rng,
    nvars: u32,
    depth: usize,
    max_width: usize,
) -> Abp<Rational> {
    let mut layers = vec![1usize];
    for _ in 1..depth {
        layers.push(rng.gen_range(1..=max_width));
    }
    layers.push(1);
    let mut abp = Abp::new(nvars, layers.clone());
    for l in 0..depth {
        for u in 0..layers[l] {
            for w in 0..layers[l + 1] {
                // Guaranteed spine on (0, 0); other edges appear with
                // probability ~ 3/4 and may carry zero forms (skipped).
                let force = u == 0 && w == 0;
                if !force && rng.gen_range(0..4) == 0 {
                    continue;
                }
                let mut label = LinForm::zero();
                for v in 0..nvars {
                    label.add_term(v, q(rng.gen_range(-2i64..=2)));
                }
                if label.is_zero() {
                    label = LinForm::var(rng.gen_range(0..nvars));
                }
                abp.add_edge(l, u, w, label);
            }
        }
    }
    abp
}

/// Product-program contract on random pairs: expansion is the
/// coefficient-wise product and per-layer sizes multiply.
pub fn verify_hadamard(pairs: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("hadamard");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..pairs {
        let nvars = rng.gen_range(2..=3u32);
        let depth = rng.gen_range(1..=3usize);
        let a = random_homogeneous_abp(&mut rng, nvars, depth, 3);
        let b = random_homogeneous_abp(&mut rng, nvars, depth, 3);
        let prod = match hadamard_abp(&a, &b) {
            Ok(p) => p,
            Err(e) => {
                out.fail(format!("case {case}: product failed: {e}"));
                continue;
            }
        };
        let sizes_ok = prod
            .layer_sizes()
            .iter()
            .zip(a.layer_sizes().iter().zip(b.layer_sizes()))
            .all(|(&p, (&x, &y))| p == x * y);
        out.check(sizes_ok, || format!("case {case}: layer sizes are not products"));
        match (prod.expand(false), a.expand(false), b.expand(false)) {
            (Ok(pp), Ok(pa), Ok(pb)) => {
                out.check(pp == pa.hadamard(&pb), || format!("case {case}: expansion differs"));
            }
            _ => out.fail(format!("case {case}: expansion failed")),
        }
    }
    out
}

/// Matrix-evaluation contract on random triples: the source-sink entry of
/// one program evaluated at the point-scaled transition matrices of the
/// other equals the coefficient-wise product evaluated at the point.
pub fn verify_matrix_eval(trials: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("matrix-eval");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..trials {
        let nvars = rng.gen_range(2..=3u32);
        let depth = rng.gen_range(1..=3usize);
        let f = random_homogeneous_abp(&mut rng, nvars, depth, 3);
        let g = random_homogeneous_abp(&mut rng, nvars, depth, 3);
        let point: Vec<Rational> = (0..nvars).map(|_| rand_rational(&mut rng)).collect();
        let tm = match g.transition_matrices() {
            Ok(t) => t,
            Err(e) => {
                out.fail(format!("case {case}: transition matrices failed: {e}"));
                continue;
            }
        };
        let scaled = match tm.scaled_by(&point) {
            Ok(s) => s,
            Err(e) => {
                out.fail(format!("case {case}: scaling failed: {e}"));
                continue;
            }
        };
        let lhs = match f.eval_matrix(&scaled) {
            Ok(m) => m.get(tm.source, tm.sink).clone(),
            Err(e) => {
                out.fail(format!("case {case}: matrix evaluation failed: {e}"));
                continue;
            }
        };
        let rhs = match (f.expand(false), g.expand(false)) {
            (Ok(pf), Ok(pg)) => pf.hadamard(&pg).substitute(&point),
            _ => {
                out.fail(format!("case {case}: expansion failed"));
                continue;
            }
        };
        match rhs {
            Ok(r) => out.check(lhs == r, || format!("case {case}: {lhs} vs {r}")),
            Err(e) => out.fail(format!("case {case}: substitution failed: {e}")),
        }
    }
    out
}

fn random_digraph(rng: &mut ChaCha8Rng, n: u32) -> Digraph {
    let mut g = Digraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if u == v {
                if rng.gen_range(0..10) == 0 {
                    g.add_arc(u, v); // occasional self-loop
                }
            } else if rng.gen_bool(0.4) {
                g.add_arc(u, v);
            }
        }
    }
    g
}

/// All three counting routes agree with exhaustive enumeration, on fixture
/// graphs and a random corpus.
pub fn verify_path_pipelines(random_graphs: usize, max_n: u32, max_k: u32, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("paths");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases: Vec<(Digraph, u32, &str)> = vec![
        (Digraph::directed_cycle(3), 3, "triangle"),
        (Digraph::directed_cycle(3), 2, "triangle"),
        (Digraph::complete(3), 2, "K3"),
        (Digraph::complete(4), 3, "K4"),
        (Digraph::directed_path(5), 4, "path5"),
        (Digraph::directed_path(5), 1, "path5"),
        (Digraph::directed_cycle(6), 4, "cycle6"),
    ];
    let mut random_cases = Vec::new();
    for _ in 0..random_graphs {
        let n = rng.gen_range(2..=max_n);
        let k = rng.gen_range(1..=n.min(max_k));
        random_cases.push((random_digraph(&mut rng, n), k, "random"));
    }
    cases.extend(random_cases);

    for (i, (g, k, tag)) in cases.iter().enumerate() {
        let expect = match enumerate_k_paths(g, *k) {
            Ok(c) => c,
            Err(e) => {
                out.fail(format!("case {i} ({tag}): enumeration failed: {e}"));
                continue;
            }
        };
        for (route, result) in [
            ("direct", count_k_paths_direct(g, *k)),
            ("direct-matrix", count_k_paths_direct_matrix(g, *k)),
            ("rdet", count_k_paths_via_rdet(g, *k)),
        ] {
            match result {
                Ok(c) => out.check(c == expect, || {
                    format!("case {i} ({tag}, n={}, k={k}): {route} gave {c}, want {expect}", g.n())
                }),
                Err(e) => out.fail(format!("case {i} ({tag}): {route} failed: {e}")),
            }
        }
    }
    out
}

/// The basis-decomposition evaluator equals injection enumeration over
/// matrix algebras, signed and unsigned.
pub fn verify_algebra(max_k: u32, max_n: u32, max_r: u32, trials: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("algebra");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in 1..=max_r {
        let alg = Algebra::<Rational>::matrix(r as usize);
        for k in 1..=max_k {
            for n in k..=max_n {
                for trial in 0..trials {
                    let entries = Grid::from_rows(
                        (0..k)
                            .map(|_| {
                                (0..n)
                                    .map(|_| {
                                        let coords = (0..alg.dim())
                                            .map(|_| q(rng.gen_range(-2i64..=2)))
                                            .collect();
                                        AlgebraElement::new(&alg, coords).unwrap()
                                    })
                                    .collect()
                            })
                            .collect(),
                    )
                    .unwrap();
                    for signed in [false, true] {
                        let fast = rect_permanent_algebra(&entries, signed);
                        let slow = rect_permanent_algebra_naive(&entries, signed);
                        match (fast, slow) {
                            (Ok(a), Ok(b)) => out.check(a == b, || {
                                format!("r={r} k={k} n={n} trial {trial} signed={signed}: differ")
                            }),
                            _ => out.fail(format!("r={r} k={k} n={n} trial {trial}: eval failed")),
                        }
                    }
                }
            }
        }
    }
    out
}

/// One measured construction build.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub construction: &'static str,
    pub n: u32,
    pub k: u32,
    pub nodes: usize,
    pub edges: usize,
    pub micros: u128,
}

impl BenchRow {
    pub fn nanos_per_node(&self) -> f64 {
        self.micros as f64 * 1000.0 / self.nodes as f64
    }
}

fn timed<T>(mut build: impl FnMut() -> T) -> (T, u128) {
    // Best of three to damp allocator and scheduler noise.
    let mut best = u128::MAX;
    let mut result = None;
    for _ in 0..3 {
        let start = Instant::now();
        let value = build();
        best = best.min(start.elapsed().as_micros());
        result = Some(value);
    }
    (result.unwrap(), best.max(1))
}

/// Build-time table for the main constructions over a parameter grid.
pub fn bench_table(max_n: u32, max_k: u32) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    let mut n = 6u32.min(max_n);
    while n <= max_n {
        for k in [3u32, 4] {
            if k <= max_k && k <= n {
                let (abp, micros) = timed(|| s_star_abp::<Rational>(n, k).unwrap());
                rows.push(BenchRow {
                    construction: "s-star",
                    n,
                    k,
                    nodes: abp.node_count(),
                    edges: abp.edge_count(),
                    micros,
                });
            }
        }
        n += 2;
    }
    for k in 5..=max_k.clamp(8, 12) {
        let (abp, micros) = timed(|| nc_determinant_abp::<Rational>(k).unwrap());
        rows.push(BenchRow {
            construction: "ncdet",
            n: k,
            k,
            nodes: abp.node_count(),
            edges: abp.edge_count(),
            micros,
        });
    }
    for (k, n) in [(4u32, 8u32), (5, 10), (6, 12)] {
        if n <= max_n.max(8) {
            let (abp, micros) = timed(|| rect_determinant_abp::<Rational>(k, n).unwrap());
            rows.push(BenchRow {
                construction: "rdet",
                n,
                k,
                nodes: abp.node_count(),
                edges: abp.edge_count(),
                micros,
            });
        }
    }
    for (n, k) in [(8u32, 4u32), (10, 5), (12, 6)] {
        if n <= max_n.max(8) && k <= max_k.max(4) {
            let (abp, micros) = timed(|| {
                elementary_symmetric_nc_abp::<Rational>(n, k).unwrap()
            });
            rows.push(BenchRow {
                construction: "snc",
                n,
                k,
                nodes: abp.node_count(),
                edges: abp.edge_count(),
                micros,
            });
        }
    }
    rows
}

/// Smoke gate on explicitness: within each construction family, build time
/// per node stays within a factor of 10 across the grid. Tiny builds are
/// excluded, where constant overhead dominates.
pub fn verify_timing(rows: &[BenchRow], factor: f64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("timing");
    for family in ["s-star", "ncdet", "rdet", "snc"] {
        let rates: Vec<f64> = rows
            .iter()
            .filter(|r| r.construction == family && r.nodes >= 64)
            .map(|r| r.nanos_per_node())
            .collect();
        if rates.len() < 2 {
            continue;
        }
        let max = rates.iter().cloned().fold(f64::MIN, f64::max);
        let min = rates.iter().cloned().fold(f64::MAX, f64::min);
        out.check(max <= factor * min, || {
            format!("{family}: time/node spread {:.1}x exceeds {factor}x", max / min)
        });
    }
    out
}

/// Round-trip stability: construct -> JSON -> load -> expand equals the
/// direct expansion, and re-serialization is byte-identical.
pub fn verify_round_trip(max_n: u32, max_k: u32) -> SuiteOutcome {
    use crate::abp::{read_json_rational, to_json};
    use crate::scalar::FieldSpec;
    let mut out = SuiteOutcome::new("round-trip");
    for n in 2..=max_n {
        for k in 1..=n.min(max_k) {
            let abp = match s_star_abp::<Rational>(n, k) {
                Ok(b) => b,
                Err(e) => {
                    out.fail(format!("S*({n},{k}): {e}"));
                    continue;
                }
            };
            let text = to_json(&abp, FieldSpec::Rational);
            match read_json_rational(&text) {
                Ok(loaded) => {
                    out.check(
                        loaded.expand(false).unwrap() == abp.expand(false).unwrap(),
                        || format!("S*({n},{k}): reloaded expansion differs"),
                    );
                    out.check(to_json(&loaded, FieldSpec::Rational) == text, || {
                        format!("S*({n},{k}): serialization is not byte-stable")
                    });
                }
                Err(e) => out.fail(format!("S*({n},{k}): reload failed: {e}")),
            }
        }
    }
    out
}

/// Runs every suite at the given grid caps.
pub fn verify_all(max_n: u32, max_k: u32) -> Vec<SuiteOutcome> {
    vec![
        verify_s_star(max_n, max_k),
        verify_s_star_size(max_n, max_k),
        verify_rect_permanent(max_n.min(6), max_k.min(3)),
        verify_nc_determinant(max_k.max(4)),
        verify_insertion_signs(6),
        verify_weak_equivalence(max_n.min(5), max_k.min(3)),
        verify_rect_determinant(max_k.min(4), max_n, 5, 0xABD0),
        verify_hadamard(40, 0xABD1),
        verify_matrix_eval(25, 0xABD2),
        verify_path_pipelines(10, max_n.min(6), max_k.min(3), 0xABD3),
        verify_algebra(3, 4, 2, 2, 0xABD4),
        verify_round_trip(max_n.min(5), max_k.min(3)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_programs_are_strict_and_expandable() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let abp = random_homogeneous_abp(&mut rng, 3, 3, 3);
            assert!(abp.is_strictly_homogeneous());
            assert!(abp.expand(false).is_ok());
        }
    }

    #[test]
    fn dense_det_matches_two_by_two() {
        let m = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
        assert_eq!(dense_det(&m), q(-2));
    }

    #[test]
    fn small_suites_pass() {
        for outcome in [
            verify_s_star(4, 3),
            verify_s_star_size(4, 3),
            verify_rect_permanent(4, 2),
            verify_nc_determinant(3),
            verify_insertion_signs(4),
            verify_weak_equivalence(3, 2),
            verify_rect_determinant(2, 4, 2, 7),
            verify_hadamard(10, 7),
            verify_matrix_eval(5, 7),
            verify_path_pipelines(2, 4, 2, 7),
            verify_algebra(2, 3, 2, 1, 7),
            verify_round_trip(3, 2),
        ] {
            assert!(outcome.passed(), "{}: {:?}", outcome.name, outcome.failures);
            assert!(outcome.cases > 0, "{} ran no cases", outcome.name);
        }
    }
}
