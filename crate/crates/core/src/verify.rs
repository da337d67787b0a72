//! The full invariant suite behind `verify` and the acceptance gate: each
//! check exercises one family of identities with randomized inputs from a
//! seeded generator and reports a named pass/fail outcome.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{dims_on_sprime, hitchin_system_dims};
use crate::curve::{CurveContext, CurvePointDivisor};
use crate::elm::{
    det_is_trivial, det_is_trivial_for, line_bundle_sum_transition, verify_cocycle, ChartAtlas,
};
use crate::expr::{Monomial, Sym};
use crate::lattice::{DivClass, SurfaceModel};
use crate::residue::{
    check_tangency, elementary_symmetric, leading_tails, merge_sections, residue_section_of,
    split_tail, LocalSeries, ResidueSection, SpectralLocalData, SpectralPointData,
};
use crate::spectral::hitchin_base_dim;
use crate::tables::{ampleness_table, dimension_table};

/// Outcome of one named invariant suite.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn ok(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            pass: true,
            detail: detail.into(),
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            pass: false,
            detail: detail.into(),
        }
    }
}

fn random_class(rng: &mut impl Rng, num_exc: usize) -> DivClass<i64> {
    DivClass::new(
        rng.gen_range(-9..=9),
        rng.gen_range(-9..=9),
        (0..num_exc).map(|_| rng.gen_range(-9..=9)).collect(),
    )
}

fn random_model(rng: &mut impl Rng) -> SurfaceModel<i64> {
    let g = rng.gen_range(2..=6);
    let ctx = CurveContext::with_default_points(g).unwrap();
    match rng.gen_range(0..3) {
        0 => SurfaceModel::s_prime(ctx),
        1 => SurfaceModel::s(ctx),
        _ => SurfaceModel::s_tilde(ctx),
    }
}

fn pairing_properties(rng: &mut impl Rng) -> CheckOutcome {
    const NAME: &str = "pairing symmetry and bilinearity";
    for _ in 0..200 {
        let m = random_model(rng);
        let k = m.num_exceptional();
        let (a, b, c) = (random_class(rng, k), random_class(rng, k), random_class(rng, k));
        let ab = m.intersect(&a, &b).unwrap();
        let ba = m.intersect(&b, &a).unwrap();
        if ab != ba {
            return CheckOutcome::fail(NAME, format!("symmetry broke on {}: {a:?}.{b:?}", m.kind().name()));
        }
        let lin = m.intersect(&a.plus(&b), &c).unwrap();
        let split = m.intersect(&a, &c).unwrap() + m.intersect(&b, &c).unwrap();
        if lin != split {
            return CheckOutcome::fail(NAME, format!("additivity broke on {}", m.kind().name()));
        }
        let s = rng.gen_range(-4i64..=4);
        if m.intersect(&a.scaled(s), &b).unwrap() != s * ab {
            return CheckOutcome::fail(NAME, "scaling broke".to_string());
        }
    }
    CheckOutcome::ok(NAME, "200 random class triples across all three models")
}

fn riemann_roch_parity(rng: &mut impl Rng) -> CheckOutcome {
    const NAME: &str = "parity of D.(D-K)";
    for _ in 0..200 {
        let m = random_model(rng);
        let d = random_class(rng, m.num_exceptional());
        let k = m.canonical_class();
        let p = m.intersect(&d, &d.minus(&k)).unwrap();
        if p % 2 != 0 {
            return CheckOutcome::fail(
                NAME,
                format!("odd pairing {p} for {d:?} on {}", m.kind().name()),
            );
        }
    }
    CheckOutcome::ok(NAME, "200 random classes: D.(D-K) always even")
}

fn pullback_isometry(rng: &mut impl Rng) -> CheckOutcome {
    const NAME: &str = "pullback isometry S -> S~";
    for _ in 0..200 {
        let g = rng.gen_range(2..=6);
        let ctx = CurveContext::with_default_points(g).unwrap();
        let s = SurfaceModel::s(ctx.clone());
        let st = SurfaceModel::s_tilde(ctx);
        let a = random_class(rng, 0);
        let b = random_class(rng, 0);
        let down = s.intersect(&a, &b).unwrap();
        let up = st
            .intersect(&st.pullback(&a).unwrap(), &st.pullback(&b).unwrap())
            .unwrap();
        if down != up {
            return CheckOutcome::fail(NAME, format!("{down} != {up} at g={g}"));
        }
    }
    CheckOutcome::ok(NAME, "200 random pairs agree before and after pullback")
}

fn serre_involution() -> CheckOutcome {
    const NAME: &str = "Serre duality involution on the curve";
    for g in 2..=8 {
        let ctx = CurveContext::<i64>::with_default_points(g).unwrap();
        for m in -6..=8 {
            if ctx.h1_mk(m) != ctx.h0_mk(1 - m) || ctx.h1_mk(1 - m) != ctx.h0_mk(m) {
                return CheckOutcome::fail(NAME, format!("g={g} m={m}"));
            }
        }
    }
    CheckOutcome::ok(NAME, "h1(mK) = h0((1-m)K) both ways, g=2..8, m=-6..8")
}

fn curve_riemann_roch() -> CheckOutcome {
    const NAME: &str = "curve Riemann-Roch for mK";
    for g in 2..=8 {
        let ctx = CurveContext::<i64>::with_default_points(g).unwrap();
        for m in -6..=8 {
            let lhs = ctx.h0_mk(m) - ctx.h1_mk(m);
            let rhs = m * (2 * g - 2) - g + 1;
            if lhs != rhs {
                return CheckOutcome::fail(NAME, format!("g={g} m={m}: {lhs} != {rhs}"));
            }
        }
    }
    CheckOutcome::ok(NAME, "h0 - h1 = deg - g + 1 on the full grid")
}

fn hitchin_base_identity() -> CheckOutcome {
    const NAME: &str = "Hitchin base dimension identity";
    for g in 2..=6 {
        let ctx = CurveContext::<i64>::with_default_points(g).unwrap();
        for n in 1..=6 {
            let base = hitchin_base_dim(&ctx, n).unwrap();
            let system = hitchin_system_dims(&ctx, n).unwrap();
            if base != n * n * (g - 1) + 1 || base != system.dim_linear_system_sprime {
                return CheckOutcome::fail(NAME, format!("g={g} n={n}"));
            }
        }
    }
    CheckOutcome::ok(NAME, "sum h0(mK) = n^2(g-1)+1 = dim|nC0'+nKf'| on 1..6 x 2..6")
}

fn dual_route_tables() -> CheckOutcome {
    const NAME: &str = "dual-route table agreement";
    for r in dimension_table((2, 6), (1, 6)) {
        if r.has_mismatch() {
            return CheckOutcome::fail(NAME, format!("dimension row n={} g={}", r.n, r.g));
        }
    }
    for r in ampleness_table((2, 6), (1, 6)) {
        if r.has_mismatch() {
            return CheckOutcome::fail(NAME, format!("ampleness row n={} g={}", r.n, r.g));
        }
    }
    CheckOutcome::ok(NAME, "no ERR cells over 1..6 x 2..6 in either table")
}

fn cor32_package() -> CheckOutcome {
    const NAME: &str = "h1 = g+1 and h2 = 0 from the decomposition";
    for g in 2..=6 {
        let ctx = CurveContext::<i64>::with_default_points(g).unwrap();
        for n in 1..=6 {
            let dims = dims_on_sprime(&ctx, n, n).unwrap();
            if dims.h1 != g + 1 || dims.h2 != 0 {
                return CheckOutcome::fail(NAME, format!("g={g} n={n}: {dims:?}"));
            }
        }
    }
    CheckOutcome::ok(NAME, "full grid 1..6 x 2..6")
}

fn genus_triple_closure() -> CheckOutcome {
    const NAME: &str = "genus triple closure across the three surfaces";
    for g in 2..=6 {
        let ctx = CurveContext::<i64>::with_default_points(g).unwrap();
        let sp = SurfaceModel::s_prime(ctx.clone());
        let s = SurfaceModel::s(ctx.clone());
        let st = SurfaceModel::s_tilde(ctx);
        for n in 1..=6 {
            let on_s = s.adjunction_genus(&s.n_section_plus_n_kf(n)).unwrap();
            let on_sp = sp.adjunction_genus(&sp.n_section_plus_n_kf(n)).unwrap();
            let on_st = st.adjunction_genus(&st.l_nnn(n).unwrap()).unwrap();
            let delta = (2 * g - 2) * n * (n - 1) / 2;
            if on_s != (2 * n * n - n) * (g - 1) + 1
                || on_s - delta != on_st
                || on_st != on_sp
                || on_sp != n * n * (g - 1) + 1
            {
                return CheckOutcome::fail(NAME, format!("g={g} n={n}: {on_s}, {on_st}, {on_sp}"));
            }
        }
    }
    CheckOutcome::ok(NAME, "adjunction on S minus delta = L_nnn genus = S' genus, full grid")
}

/// Cocycle + determinant suites over `count` random atlases, plus the
/// fault-injection negative control.
pub fn cocycle_suite(rng: &mut impl Rng, count: usize) -> CheckOutcome {
    const NAME: &str = "cocycle and determinant suites";
    let mut triples_checked = 0usize;
    for a in 0..count {
        let charts = rng.gen_range(2..=8);
        let atlas = ChartAtlas::random(rng, charts);
        for (i, j, k) in atlas.triples() {
            let check = verify_cocycle::<i64>(&atlas, i, j, k).unwrap();
            if !check.ok {
                return CheckOutcome::fail(
                    NAME,
                    format!("atlas {a}, triple ({i},{j},{k}): {}", check.trace),
                );
            }
            triples_checked += 1;
        }
        if !det_is_trivial(&atlas) {
            return CheckOutcome::fail(NAME, format!("non-trivial determinant in atlas {a}"));
        }
        let split = det_is_trivial_for::<i64>(&atlas, |at, i, j| line_bundle_sum_transition(at, i, j))
            .unwrap();
        let has_q0_overlap = atlas.overlaps().any(|(_, _, q0)| q0);
        if split && has_q0_overlap {
            return CheckOutcome::fail(
                NAME,
                format!("split-bundle determinant passed triviality in atlas {a}"),
            );
        }
    }
    // Negative control: a corrupted chain rule must be caught.
    let mut atlas = ChartAtlas::new(3, &[(0, 1, true), (1, 2, true), (0, 2, true)]).unwrap();
    atlas.inject_rule(Sym::G(0, 2), Monomial::var(Sym::G(0, 1)));
    if verify_cocycle::<i64>(&atlas, 0, 1, 2).unwrap().ok {
        return CheckOutcome::fail(NAME, "injected fault was not detected".to_string());
    }
    CheckOutcome::ok(
        NAME,
        format!("{count} atlases, {triples_checked} triples, negative control caught"),
    )
}

/// Random tails in the unit disk with pairwise separation >= 1e-3,
/// encoded through elementary symmetric functions and recovered.
pub fn tail_round_trip(rng: &mut impl Rng, count: usize) -> CheckOutcome {
    const NAME: &str = "leading-tail round trip";
    for trial in 0..count {
        let n = rng.gen_range(1..=6);
        let mut tails: Vec<Complex64> = Vec::with_capacity(n);
        while tails.len() < n {
            let cand = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if tails.iter().all(|t| (t - cand).norm() >= 1e-3) {
                tails.push(cand);
            }
        }
        let abar = elementary_symmetric(&tails);
        let recovered = match leading_tails(n, &abar, 1e-8) {
            Ok(r) => r,
            Err(e) => return CheckOutcome::fail(NAME, format!("trial {trial}: {e}")),
        };
        // Optimal matching via the assignment solver.
        let cost: Vec<Vec<f64>> = tails
            .iter()
            .map(|t| recovered.iter().map(|r| (t - r).norm()).collect())
            .collect();
        let assign = crate::residue::min_cost_assignment(&cost);
        for (a, &b) in assign.iter().enumerate() {
            if cost[a][b] > 1e-8 * (1.0 + tails[a].norm()) {
                return CheckOutcome::fail(
                    NAME,
                    format!("trial {trial}: tail {a} off by {}", cost[a][b]),
                );
            }
        }
    }
    CheckOutcome::ok(NAME, format!("{count} random multisets recovered within 1e-8"))
}

fn random_section(rng: &mut impl Rng, ctx: &CurveContext<i64>) -> ResidueSection<f64> {
    let support = ctx
        .canonical_divisor()
        .plus(&CurvePointDivisor::single("extra", 1).unwrap());
    let mut series = std::collections::BTreeMap::new();
    for p in support.multiplicities().keys() {
        let s: LocalSeries<f64> = vec![(
            -1,
            Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
        )];
        series.insert(p.clone(), s);
    }
    residue_section_of(&series, &support).unwrap()
}

fn split_merge_round_trip(rng: &mut impl Rng) -> CheckOutcome {
    const NAME: &str = "split/merge round trip";
    for _ in 0..100 {
        let g = rng.gen_range(2..=5);
        let ctx = CurveContext::with_default_points(g).unwrap();
        let rho = random_section(rng, &ctx);
        let (a, b) = match split_tail(ctx.canonical_points(), &rho) {
            Ok(pair) => pair,
            Err(e) => return CheckOutcome::fail(NAME, format!("{e}")),
        };
        if a.dim() + b.dim() != rho.dim() {
            return CheckOutcome::fail(NAME, "degrees not additive".to_string());
        }
        if merge_sections(&a, &b).unwrap() != rho {
            return CheckOutcome::fail(NAME, "merge did not invert split".to_string());
        }
    }
    CheckOutcome::ok(NAME, "100 random sections over K + q, g = 2..5")
}

fn residue_linearity(rng: &mut impl Rng) -> CheckOutcome {
    const NAME: &str = "residue-section linearity";
    for _ in 0..100 {
        let d = CurvePointDivisor::single("p", rng.gen_range(1..=4)).unwrap();
        let mut f = std::collections::BTreeMap::new();
        let mut g = std::collections::BTreeMap::new();
        let mut sum = std::collections::BTreeMap::new();
        let mut fs: LocalSeries<f64> = Vec::new();
        let mut gs: LocalSeries<f64> = Vec::new();
        for order in -5..=2 {
            let a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let b = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            fs.push((order, a));
            gs.push((order, b));
        }
        let mut both = fs.clone();
        both.extend(gs.clone());
        f.insert("p".to_string(), fs);
        g.insert("p".to_string(), gs);
        sum.insert("p".to_string(), both);
        let rf = residue_section_of(&f, &d).unwrap();
        let rg = residue_section_of(&g, &d).unwrap();
        let rs = residue_section_of(&sum, &d).unwrap();
        let added = rf.add(&rg).unwrap();
        let close = added
            .support()
            .multiplicities()
            .keys()
            .all(|p| {
                added
                    .tail(p)
                    .unwrap()
                    .coeffs
                    .iter()
                    .zip(&rs.tail(p).unwrap().coeffs)
                    .all(|(x, y)| (x - y).norm() < 1e-12)
            });
        if !close {
            return CheckOutcome::fail(NAME, "sum of sections differs from section of sum");
        }
    }
    CheckOutcome::ok(NAME, "100 random series pairs")
}

fn tangency_controls(rng: &mut impl Rng) -> CheckOutcome {
    const NAME: &str = "tangency verdict controls";
    let g = 2i64;
    let n = 3usize;
    let tails: Vec<Complex64> = vec![
        Complex64::new(1.0, 0.5),
        Complex64::new(-0.5, 0.25),
        Complex64::new(0.25, -1.0),
    ];
    let abar = elementary_symmetric(&tails);
    let make = |lambda: Vec<Vec<Complex64>>| SpectralLocalData {
        genus: g,
        n,
        points: (0..2)
            .map(|i| SpectralPointData {
                id: format!("q{}", i + 1),
                abar: abar.clone(),
                lambda: Some(lambda[i].clone()),
            })
            .collect(),
    };
    let base = make(vec![tails.clone(), tails.clone()]);
    let report = check_tangency(&base, 1e-8).unwrap();
    if !report.pass {
        return CheckOutcome::fail(NAME, "exact cancellation did not pass".to_string());
    }
    // Relabeling invariance: shuffle the lambda entries per point.
    for _ in 0..20 {
        let mut shuffled = tails.clone();
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        let relabeled = make(vec![shuffled.clone(), shuffled]);
        if !check_tangency(&relabeled, 1e-8).unwrap().pass {
            return CheckOutcome::fail(NAME, "relabeled branches changed the verdict".to_string());
        }
    }
    // Negative control: perturb one entry by 1.
    let mut bad = tails.clone();
    bad[1] += Complex64::new(1.0, 0.0);
    let perturbed = make(vec![tails.clone(), bad]);
    let report = check_tangency(&perturbed, 1e-8).unwrap();
    if report.pass || report.points[1].pass || report.points[0].pass == false {
        return CheckOutcome::fail(NAME, "perturbation was not localized to q2".to_string());
    }
    if report.points[1].failing_branch.is_none() {
        return CheckOutcome::fail(NAME, "failing branch not named".to_string());
    }
    CheckOutcome::ok(NAME, "pass, relabeling invariance, and localized failure")
}

/// Run every invariant suite with the given seed and sizes.
pub fn run_all(seed: u64, atlas_count: usize, tail_count: usize) -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        pairing_properties(&mut rng),
        riemann_roch_parity(&mut rng),
        pullback_isometry(&mut rng),
        serre_involution(),
        curve_riemann_roch(),
        hitchin_base_identity(),
        cor32_package(),
        genus_triple_closure(),
        dual_route_tables(),
        cocycle_suite(&mut rng, atlas_count),
        tail_round_trip(&mut rng, tail_count),
        split_merge_round_trip(&mut rng),
        residue_linearity(&mut rng),
        tangency_controls(&mut rng),
    ]
}
