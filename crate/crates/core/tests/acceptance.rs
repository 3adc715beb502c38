//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the report always reaches stdout.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use jmult::dual::{generators_to_inequalities, inequalities_to_vertices};
use jmult::geometry::{rat, ratio, to_bigint_vector, to_rational_vector, Hyperplane, Rational};
use jmult::multiplicity::{
    cycle_edges, edge_ideal, epsilon_multiplicity, hs_multiplicity, j_multiplicity,
};
use jmult::newton::{integral_closure, newton, power, MonomialIdeal, NewtonData};
use jmult::oracle::{
    closure_filtration_length, convergence_report, count_cone_section, epsilon_lengths,
    fits_polynomial, out_region_count, quasi_period, LengthKind, LengthSequence,
};
use jmult::toric::{toric_j_multiplicity, toric_newton, PointedCone, ToricIdeal};
use jmult::volume::{out_normalized_volume, out_region_piece, pyr_facet_volumes, Apex};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Relative gap allowed for j-type sequences at n = 40 in two variables.
const J_TOL_D2: f64 = 0.15;
/// Relative gap allowed for j-type sequences at n = 20 in three variables.
const J_TOL_D3: f64 = 0.25;
/// Relative gap allowed for ε-type sequences at the same levels.
const EPS_TOL: f64 = 0.20;
const N_MAX_D2: u64 = 40;
const N_MAX_D3: u64 = 20;

const EXACT_BUDGET: Duration = Duration::from_secs(1);
const CYCLE_BUDGET: Duration = Duration::from_secs(2);
const VERIFY_BUDGET: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ideal(gens: &[&[i64]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(gens).expect("valid ideal")
}

fn ex61() -> MonomialIdeal {
    ideal(&[&[0, 4], &[2, 1], &[1, 2]])
}

fn ex62() -> MonomialIdeal {
    ideal(&[
        &[6, 0, 0],
        &[0, 6, 0],
        &[0, 0, 6],
        &[2, 1, 1],
        &[1, 2, 1],
        &[1, 1, 2],
    ])
}

fn ex62_parts() -> [MonomialIdeal; 4] {
    [
        ideal(&[&[6, 0, 0], &[0, 6, 0], &[2, 1, 1], &[1, 2, 1]]),
        ideal(&[&[0, 6, 0], &[0, 0, 6], &[1, 2, 1], &[1, 1, 2]]),
        ideal(&[&[6, 0, 0], &[0, 0, 6], &[2, 1, 1], &[1, 1, 2]]),
        ideal(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]),
    ]
}

fn c3() -> MonomialIdeal {
    ideal(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])
}

fn three_step() -> MonomialIdeal {
    ideal(&[&[1, 5], &[2, 3], &[3, 2]])
}

fn test_ideals() -> Vec<(&'static str, MonomialIdeal)> {
    vec![
        ("(y^4,x^2y,xy^2)", ex61()),
        ("(xy^5,x^2y^3,x^3y^2)", three_step()),
        ("(x,y)", MonomialIdeal::maximal(2)),
        ("(x^2,y^3)", ideal(&[&[2, 0], &[0, 3]])),
        ("(x^4,y^5)", ideal(&[&[4, 0], &[0, 5]])),
        ("(x^3,xy,y^4)", ideal(&[&[3, 0], &[1, 1], &[0, 4]])),
        ("(x^2,xy)", ideal(&[&[2, 0], &[1, 1]])),
        ("(xy)", ideal(&[&[1, 1]])),
        ("(xy,yz,zx)", c3()),
        ("(x^2yz,xy^2z,xyz^2)", ex62_parts()[3].clone()),
        ("(x^6,y^6,z^6,x^2yz,xy^2z,xyz^2)", ex62()),
        ("(x,y,z)", MonomialIdeal::maximal(3)),
    ]
}

fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let i = ex61();
    let j = j_multiplicity(&i).unwrap();
    let e = epsilon_multiplicity(&i).unwrap();
    let t = start.elapsed();
    check(
        j == big(7) && e == rat(5) && t < EXACT_BUDGET,
        format!("(y^4,x^2y,xy^2): j = {j}, eps = {e}, {t:.2?}"),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let i = ex62();
    let j = j_multiplicity(&i).unwrap();
    let hs = hs_multiplicity(&i).unwrap();
    let parts: Vec<BigInt> = ex62_parts()
        .iter()
        .map(|p| j_multiplicity(p).unwrap())
        .collect();
    let nd = newton(&i).unwrap();
    let mut facet_volumes: Vec<Rational> = pyr_facet_volumes(&nd, Apex::First)
        .unwrap()
        .into_iter()
        .map(|(_, v)| v)
        .collect();
    facet_volumes.sort();
    let t = start.elapsed();
    let want_parts = vec![big(42), big(42), big(42), big(4)];
    let want_facets = vec![rat(4), rat(42), rat(42), rat(42)];
    let sum: BigInt = parts.iter().sum();
    check(
        j == big(130)
            && hs == Some(big(130))
            && parts == want_parts
            && facet_volumes == want_facets
            && sum == j
            && t < EXACT_BUDGET,
        format!(
            "j = e = {j}, parts {:?}, facet pyramids {:?}, {t:.2?}",
            parts.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            facet_volumes
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
        ),
    )
}

fn criterion_3() -> Outcome {
    let i = c3();
    let nd = newton(&i).unwrap();
    let out = out_normalized_volume(&nd).unwrap();
    let k = nd.facets().iter().position(|f| f.bounded).unwrap();
    let mut verts = out_region_piece(&nd, k).unwrap();
    verts.sort();
    let h = ratio(1, 2);
    let mut want = vec![
        to_rational_vector(&[1, 0, 1]),
        to_rational_vector(&[1, 1, 0]),
        to_rational_vector(&[0, 1, 1]),
        vec![h.clone(), h.clone(), h],
    ];
    want.sort();
    let vol = out.euclidean(3);
    check(
        out.normalized == ratio(1, 2) && vol == ratio(1, 12) && verts == want,
        format!(
            "eps = {}, vol(out) = {vol}, tetrahedron matches: {}",
            out.normalized,
            verts == want
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut got = Vec::new();
    let mut slowest = Duration::ZERO;
    for d in 3..=9 {
        let start = Instant::now();
        let j = j_multiplicity(&edge_ideal(d, &cycle_edges(d)).unwrap()).unwrap();
        slowest = slowest.max(start.elapsed());
        got.push(j.to_i64().unwrap());
    }
    check(
        got == [2, 0, 2, 0, 2, 0, 2] && slowest < CYCLE_BUDGET,
        format!("j(C_3..C_9) = {got:?}, slowest {slowest:.2?}"),
    )
}

fn criterion_5() -> Outcome {
    let nd = newton(&three_step()).unwrap();
    let verts_ok = nd.vertices() == [vec![1, 5], vec![2, 3], vec![3, 2]];
    let mut facets: Vec<(Vec<i64>, i64, bool)> = nd
        .lattice_facets()
        .iter()
        .map(|f| (f.normal.clone(), f.offset_num, f.bounded))
        .collect();
    facets.sort();
    let want = vec![
        (vec![0, 1], 2, false),
        (vec![1, 0], 1, false),
        (vec![1, 1], 5, true),
        (vec![2, 1], 7, true),
    ];
    let j = j_multiplicity(&three_step()).unwrap();
    let seq = LengthSequence::collect(LengthKind::ConeSectionCount, 2, 0..=N_MAX_D2, |n| {
        count_cone_section(&nd, n)
    });
    let r = convergence_report(&seq, &Rational::from_integer(j.clone())).unwrap();
    let rel = to_f64(&r.relative_gap());
    check(
        verts_ok && facets == want && j == big(12) && rel <= J_TOL_D2,
        format!(
            "vertices ok: {verts_ok}, facets {facets:?}, j = {j}, cs_n relative gap {rel:.4} at n = {}",
            r.n_max
        ),
    )
}

fn n_max(dim: usize) -> u64 {
    if dim == 2 {
        N_MAX_D2
    } else {
        N_MAX_D3
    }
}

struct Sequences {
    cone: LengthSequence,
    closure: LengthSequence,
}

fn j_sequences(nd: &NewtonData, dim: usize) -> Sequences {
    let top = n_max(dim);
    Sequences {
        cone: LengthSequence::collect(LengthKind::ConeSectionCount, dim, 0..=top, |n| {
            count_cone_section(nd, n)
        }),
        closure: LengthSequence::collect(LengthKind::ClosureFiltrationJ, dim, 0..=top, |n| {
            closure_filtration_length(nd, n)
        }),
    }
}

fn criterion_6(all: &[(&str, MonomialIdeal, Sequences)]) -> Outcome {
    let mut violations = Vec::new();
    let mut checked = 0;
    for (name, _, s) in all {
        for (n, c) in &s.closure.values {
            checked += 1;
            if *c > s.cone.values[n] {
                violations.push(format!("{name} n={n}"));
            }
        }
    }
    check(
        violations.is_empty(),
        format!("{checked} (ideal, n) pairs, violations: {violations:?}"),
    )
}

/// Smallest C with `|gap| <= j C / n` over the upper half of the levels.
fn fitted_constant(seq: &LengthSequence, target: &Rational) -> f64 {
    let r = convergence_report(seq, target).unwrap();
    let half = r.n_max / 2;
    r.normalized
        .iter()
        .filter(|(n, _)| *n >= half.max(1))
        .map(|(n, v)| {
            let gap = to_f64(&(v - target).abs());
            gap * *n as f64 / to_f64(target).max(1.0)
        })
        .fold(0.0, f64::max)
}

fn criterion_7(all: &[(&str, MonomialIdeal, Sequences)], j_scans: Duration) -> Outcome {
    let start = Instant::now();
    let mut worst: Vec<String> = Vec::new();
    let mut pass = true;
    for (name, i, s) in all {
        let j = Rational::from_integer(j_multiplicity(i).unwrap());
        if j.is_zero() {
            // both sequences must vanish identically
            let zero = s
                .cone
                .values
                .values()
                .chain(s.closure.values.values())
                .all(|&v| v == 0);
            pass &= zero;
            continue;
        }
        let tol = if i.dim() == 2 { J_TOL_D2 } else { J_TOL_D3 };
        for seq in [&s.cone, &s.closure] {
            let r = convergence_report(seq, &j).unwrap();
            let rel = to_f64(&r.relative_gap());
            let c = fitted_constant(seq, &j);
            pass &= rel <= tol;
            worst.push(format!("{name} {} {rel:.3} (C={c:.1})", seq.kind));
        }
    }
    let mut eps_lines = Vec::new();
    for (name, i, _) in all {
        let e = epsilon_multiplicity(i).unwrap();
        if e.is_zero() {
            continue;
        }
        let nd = newton(i).unwrap();
        let top = n_max(i.dim());
        let closure = LengthSequence::collect(LengthKind::ClosureEpsilon, i.dim(), 1..=top, |n| {
            epsilon_lengths(i, &nd, n, true)
        });
        let rel = to_f64(&convergence_report(&closure, &e).unwrap().relative_gap());
        pass &= rel <= EPS_TOL;
        eps_lines.push(format!("{name} closure {rel:.3}"));
        // powers of ideals with many generators make the direct scan slow in d = 3
        if i.dim() == 2 || i.generators().len() <= 3 {
            let direct =
                LengthSequence::collect(LengthKind::DirectPowerEpsilon, i.dim(), [top], |n| {
                    epsilon_lengths(i, &nd, n, false)
                });
            let rel = to_f64(&convergence_report(&direct, &e).unwrap().relative_gap());
            pass &= rel <= EPS_TOL;
            eps_lines.push(format!("{name} direct {rel:.3}"));
        }
    }
    // the closure count must also agree with the out-region scan
    let c3 = c3();
    let nd = newton(&c3).unwrap();
    let twin = (1..=8).all(|n| epsilon_lengths(&c3, &nd, n, true) == out_region_count(&nd, n));
    pass &= twin;
    let verify_time = j_scans + start.elapsed();
    pass &= verify_time < VERIFY_BUDGET;
    check(
        pass,
        format!(
            "j-type relative gaps: [{}]; eps-type: [{}]; out-region twin scan agrees: {twin}; scans {verify_time:.1?}",
            worst.join(", "),
            eps_lines.join(", ")
        ),
    )
}

/// `2!` times the area of the triangle cut off by `x/a + y/b < 1`, via the
/// shoelace formula on its corners.
fn staircase_area_oracle(a: i64, b: i64) -> Rational {
    let corners = [(0, 0), (a, 0), (0, b)];
    let mut twice = 0;
    for k in 0..3 {
        let (x0, y0) = corners[k];
        let (x1, y1) = corners[(k + 1) % 3];
        twice += x0 * y1 - x1 * y0;
    }
    rat(twice.abs())
}

fn criterion_8() -> Outcome {
    let mut pass = true;
    let mut lines = Vec::new();
    for d in [2, 3] {
        let m = MonomialIdeal::maximal(d);
        let (j, e, hs) = (
            j_multiplicity(&m).unwrap(),
            epsilon_multiplicity(&m).unwrap(),
            hs_multiplicity(&m).unwrap(),
        );
        pass &= j == big(1) && e == rat(1) && hs == Some(big(1));
        lines.push(format!("m (d={d}): {j}/{e}/{hs:?}"));
    }
    for (a, b) in [(2, 3), (4, 5)] {
        let i = ideal(&[&[a, 0], &[0, b]]);
        let (j, e, hs) = (
            j_multiplicity(&i).unwrap(),
            epsilon_multiplicity(&i).unwrap(),
            hs_multiplicity(&i).unwrap(),
        );
        let area = staircase_area_oracle(a, b);
        pass &= Some(j.clone()) == hs
            && Rational::from_integer(j.clone()) == e
            && area == Rational::from_integer(j.clone())
            && j == big(a * b);
        lines.push(format!(
            "(x^{a},y^{b}): hs=j={j}, eps={e}, staircase {area}"
        ));
    }
    check(pass, lines.join("; "))
}

fn criterion_9() -> Outcome {
    let m = newton(&MonomialIdeal::maximal(2)).unwrap();
    let diag = (0..=100).all(|n| count_cone_section(&m, n) == n + 1);
    let nd = newton(&three_step()).unwrap();
    let period = quasi_period(&nd);
    let values: BTreeMap<u64, u64> = (0..=N_MAX_D2)
        .map(|n| (n, count_cone_section(&nd, n)))
        .collect();
    let fits: Vec<Option<bool>> = (0..period)
        .map(|r| fits_polynomial(&values, r, period, 1))
        .collect();
    let linear = fits.iter().all(|f| *f == Some(true));
    check(
        diag && linear,
        format!(
            "m: cs_n = n+1 for n <= 100: {diag}; (xy^5,x^2y^3,x^3y^2) period {period}, linear on every class: {linear} (cs_1 = {}, cs_2 = {})",
            values[&1], values[&2]
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut identical = true;
    let mut cases: Vec<MonomialIdeal> = vec![ex61(), ex62(), c3()];
    cases.extend(ex62_parts());
    cases.extend((3..=9).map(|d| edge_ideal(d, &cycle_edges(d)).unwrap()));
    for i in &cases {
        let t = ToricIdeal::from_orthant(i.exponent_vectors()).unwrap();
        let (a, b) = (newton(i).unwrap(), toric_newton(&t).unwrap());
        identical &= a.facets() == b.facets()
            && a.vertices() == b.vertices()
            && j_multiplicity(i).unwrap() == toric_j_multiplicity(&t).unwrap();
    }
    let sigma = PointedCone::new(&[vec![1, 0], vec![1, 2]]).unwrap();
    let t = ToricIdeal::new(sigma, vec![vec![2, 1], vec![1, 2]]).unwrap();
    let j = toric_j_multiplicity(&t).unwrap();
    let nd = toric_newton(&t).unwrap();
    let seq = LengthSequence::collect(LengthKind::ConeSectionCount, 2, 0..=N_MAX_D2, |n| {
        count_cone_section(&nd, n)
    });
    let rel = to_f64(
        &convergence_report(&seq, &Rational::from_integer(j.clone()))
            .unwrap()
            .relative_gap(),
    );
    check(
        identical && j == big(3) && rel <= J_TOL_D2,
        format!(
            "orthant specialization identical on {} ideals: {identical}; toric j = {j}, cs_n relative gap {rel:.4} at n = {N_MAX_D2}",
            cases.len()
        ),
    )
}

fn random_ideals(dim: usize, cases: usize, max_exp: i64) -> Vec<MonomialIdeal> {
    let mut runner = TestRunner::new_with_rng(
        Config::default(),
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let strategy = proptest::collection::vec(proptest::collection::vec(0..=max_exp, dim), 1..5)
        .prop_map(move |g| MonomialIdeal::new(dim, g).unwrap())
        .prop_filter("proper", |i| !i.is_unit());
    (0..cases)
        .map(|_| strategy.new_tree(&mut runner).unwrap().current())
        .collect()
}

/// Saturated in the definitional sense: for each `j` some generator of `Ī`
/// is below `p` away from coordinate `j`.
fn t_witness(closure_gens: &[Vec<i64>], p: &[i64]) -> bool {
    (0..p.len()).all(|j| {
        closure_gens
            .iter()
            .any(|g| (0..p.len()).all(|i| i == j || g[i] <= p[i]))
    })
}

fn for_each_in_box(hi: i64, dim: usize, mut f: impl FnMut(&[i64])) {
    let mut p = vec![0; dim];
    loop {
        f(&p);
        let mut k = dim;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if p[k] < hi {
                p[k] += 1;
                break;
            }
            p[k] = 0;
        }
    }
}

fn hull_round_trip(i: &MonomialIdeal) -> bool {
    let dim = i.dim();
    let bound = 7;
    let verts: Vec<_> = i
        .exponent_vectors()
        .iter()
        .map(|v| to_rational_vector(v))
        .collect();
    let rays: Vec<_> = (0..dim)
        .map(|k| to_bigint_vector(&(0..dim).map(|j| i64::from(j == k)).collect::<Vec<_>>()))
        .collect();
    let Ok(p) = generators_to_inequalities(&verts, &rays) else {
        return false;
    };
    let mut ineqs = p.inequalities().to_vec();
    for k in 0..dim {
        let mut e = vec![0; dim];
        e[k] = -1;
        ineqs.push(Hyperplane::from_i64(&e, rat(-bound)).unwrap());
    }
    let Ok(back) = inequalities_to_vertices(&ineqs, dim) else {
        return false;
    };
    let inside: Vec<_> = p
        .vertices()
        .iter()
        .filter(|v| v.iter().all(|x| *x < rat(bound)))
        .collect();
    inside.iter().all(|v| back.contains(v))
}

fn criterion_11() -> Outcome {
    let mut fails: Vec<String> = Vec::new();
    let mut family = random_ideals(2, 60, 6);
    family.extend(random_ideals(3, 40, 4));
    family.extend(test_ideals().into_iter().map(|(_, i)| i));

    let mut round_trips = 0;
    let mut laws = 0;
    for i in &family {
        if hull_round_trip(i) {
            round_trips += 1;
        } else {
            fails.push(format!("round trip {i}"));
        }
        let j = j_multiplicity(i).unwrap();
        let e = epsilon_multiplicity(i).unwrap();
        let bar = integral_closure(i).unwrap();
        let mut ok = e <= Rational::from_integer(j.clone())
            && !e.is_negative()
            && j_multiplicity(&bar).unwrap() == j
            && epsilon_multiplicity(&bar).unwrap() == e;
        for n in 1..=3u32 {
            ok &= j_multiplicity(&power(i, n)).unwrap() == &j * BigInt::from(n).pow(i.dim() as u32);
        }
        if ok {
            laws += 1;
        } else {
            fails.push(format!("laws {i}"));
        }
    }

    let mut sat_points = 0u64;
    for (dim, hi) in [(2, 8), (3, 5)] {
        let ideals: Vec<&MonomialIdeal> = family.iter().filter(|i| i.dim() == dim).collect();
        for i in ideals {
            let nd = newton(i).unwrap();
            let gens = integral_closure(i).unwrap().exponent_vectors();
            for_each_in_box(hi, dim, |p| {
                sat_points += 1;
                if nd.satisfies_unbounded_at_scale(p, 1) != t_witness(&gens, p) {
                    fails.push(format!("saturation {i} at {p:?}"));
                }
            });
        }
    }
    check(
        fails.is_empty(),
        format!(
            "{} ideals: {round_trips} hull round trips, {laws} law checks (eps <= j, j(I) = j(closure), j(I^n) = n^d j(I)); {sat_points} saturation points; failures {:?}",
            family.len(),
            fails.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn main() {
    let mut results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4()),
        (5, criterion_5()),
    ];

    let start = Instant::now();
    let all: Vec<(&str, MonomialIdeal, Sequences)> = test_ideals()
        .into_iter()
        .map(|(name, i)| {
            let nd = newton(&i).unwrap();
            let s = j_sequences(&nd, i.dim());
            (name, i, s)
        })
        .collect();
    let j_scans = start.elapsed();
    results.push((6, criterion_6(&all)));
    results.push((7, criterion_7(&all, j_scans)));
    results.push((8, criterion_8()));
    results.push((9, criterion_9()));
    results.push((10, criterion_10()));
    results.push((11, criterion_11()));

    let mut failed = 0;
    for (k, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!("criterion {k:>2}: {tag}  {}", o.detail);
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
