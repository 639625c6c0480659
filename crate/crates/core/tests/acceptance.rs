//! End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero exit
//! if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, Zero};
use randmono::asymptotics::{
    beta1_limit_bounds, expected_beta1_2vars_lambert, expected_beta1_limit, polylog_neg, tau, CompensatedSum,
};
use randmono::counting::{attainable_hilbert_vectors, enumerate_monomial_ideals, lex_betti_bounds, nmon, prob_hilbert};
use randmono::exact::{
    brute_force_distribution, krull_dim_distribution, krull_dimension, prob_ideal_er, KrullMethod,
};
use randmono::experiments::{
    critical_region_check, estimate, homology_campaign, initdeg_band_check, krull_threshold_check, run_threshold_check,
    zero_ideal_threshold_check, CriticalRegime, HomologyVariant, Property,
};
use randmono::rational::rational;
use randmono::sampling::{cf_hierarchical_distribution, CfParams, ErParams, Sampler, Seed};
use randmono::text::format_ideal;
use randmono::topology::{cf_distribution_table, z2_homology, SimplicialComplex};
use randmono::{HilbertVector, Monomial, MonomialIdeal, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn er(n: usize, d: u32, p: &Rational) -> ErParams<Rational> {
    ErParams::new(n, d, p.clone()).unwrap()
}

fn thirds_halves_quarters() -> Vec<Rational> {
    vec![rational(1, 3), rational(1, 2), rational(3, 4)]
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for (n, d) in [(1, 3), (2, 2), (2, 3), (3, 2)] {
        let census = enumerate_monomial_ideals(n, d).map_err(|e| e.to_string())?;
        for p in thirds_halves_quarters() {
            let params = er(n, d, &p);
            let oracle = brute_force_distribution(&params).map_err(|e| e.to_string())?;
            let total: Rational = oracle.values().map(|q| q.value().clone()).sum();
            ensure(total.is_one(), || format!("oracle mass {total} at n={n} D={d}"))?;
            for ideal in &census.ideals {
                let formula = prob_ideal_er(ideal, &params).map_err(|e| e.to_string())?;
                let brute = oracle.get(ideal).map(|q| q.value().clone()).unwrap_or_else(Rational::zero);
                ensure(formula.value() == &brute, || {
                    format!("n={n} D={d} p={p} ideal {ideal}: formula {formula}, oracle {brute}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} ideal/parameter pairs exact"))
}

fn principal_ideals() -> Outcome {
    let quarter = rational(1, 4);
    for d in 3u32..=5 {
        let mut best: Vec<(Rational, Monomial)> = Vec::new();
        for a in 0..=d {
            for g in 0..=d - a {
                if a + g == 0 {
                    continue;
                }
                let m = Monomial::new(vec![a, g]);
                let ideal = MonomialIdeal::from_generators(2, d, [m.clone()]).unwrap();
                let (ai, gi, di) = (i64::from(a), i64::from(g), i64::from(d));
                let exponent = (gi * (2 * di - gi + 3) + ai * (2 * di - ai + 3)) / 2 - ai * gi - 1;
                let count = ideal.standard_count(d) as i64;
                ensure(exponent == count, || format!("D={d} x^{a}y^{g}: exponent {exponent}, standard count {count}"))?;
                let prob = prob_ideal_er(&ideal, &er(2, d, &quarter)).unwrap();
                best.push((prob.into_inner(), m));
            }
        }
        best.sort_by(|x, y| y.0.cmp(&x.0));
        let top: Vec<&Monomial> = best.iter().take(2).map(|(_, m)| m).collect();
        ensure(best[0].0 == best[1].0 && best[1].0 > best[2].0, || format!("D={d}: no unique top pair"))?;
        ensure(
            top.contains(&&Monomial::new(vec![1, 0])) && top.contains(&&Monomial::new(vec![0, 1])),
            || format!("D={d}: most probable principal ideals are {top:?}"),
        )?;
    }
    Ok("D = 3, 4, 5".into())
}

fn krull_distribution() -> Outcome {
    for n in 1..=3usize {
        for d in 1..=3u32 {
            for p in [rational(1, 3), rational(1, 2)] {
                let params = er(n, d, &p);
                let oracle = brute_force_distribution(&params).map_err(|e| e.to_string())?;
                let mut mass = vec![Rational::zero(); n + 1];
                for (ideal, q) in &oracle {
                    mass[krull_dimension(ideal)] += q.value();
                }
                for (t, m) in mass.iter().enumerate() {
                    let closed = krull_dim_distribution(&params, t, KrullMethod::ClosedForm).map_err(|e| e.to_string())?;
                    let clutter = krull_dim_distribution(&params, t, KrullMethod::ClutterSum).map_err(|e| e.to_string())?;
                    ensure(closed.value() == m && clutter.value() == m, || {
                        format!("n={n} D={d} p={p} t={t}: closed {closed}, clutter {clutter}, oracle {m}")
                    })?;
                }
            }
        }
    }
    for d in [2u32, 3] {
        for p in [rational(1, 3), rational(1, 2)] {
            let params = er(4, d, &p);
            let mut total = Rational::zero();
            for t in [0usize, 1, 3, 4] {
                total += krull_dim_distribution(&params, t, KrullMethod::ClosedForm)
                    .map_err(|e| e.to_string())?
                    .value();
            }
            total += krull_dim_distribution(&params, 2, KrullMethod::ClutterSum)
                .map_err(|e| e.to_string())?
                .value();
            ensure(total.is_one(), || format!("n=4 D={d} p={p}: total {total}"))?;
        }
    }
    Ok("n <= 3 three ways; n = 4 sums to 1".into())
}

fn hilbert_distribution() -> Outcome {
    for (n, d) in [(2, 2), (2, 3), (3, 2)] {
        let census = enumerate_monomial_ideals(n, d).map_err(|e| e.to_string())?;
        for p in [rational(1, 3), rational(1, 2)] {
            let params = er(n, d, &p);
            let mut by_h: BTreeMap<HilbertVector, Rational> = BTreeMap::new();
            for ideal in &census.ideals {
                *by_h.entry(ideal.hilbert_vector()).or_default() += prob_ideal_er(ideal, &params).unwrap().value();
            }
            let attainable = attainable_hilbert_vectors(n, d).map_err(|e| e.to_string())?;
            ensure(attainable.iter().eq(by_h.keys()), || format!("n={n} D={d}: attainable vectors differ"))?;
            let mut total = Rational::zero();
            for (h, expected) in &by_h {
                let got = prob_hilbert(&params, h).map_err(|e| e.to_string())?;
                ensure(got.value() == expected, || format!("n={n} D={d} h={h:?}: {got} vs {expected}"))?;
                total += got.value();
            }
            ensure(total.is_one(), || format!("n={n} D={d}: total {total}"))?;
        }
        for ((h, beta), count) in census.counts() {
            let got = nmon(n, d, &h, &beta).map_err(|e| e.to_string())?;
            ensure(got == count, || format!("nmon({h:?}, {beta:?}) = {got}, census {count}"))?;
        }
    }
    Ok("(2,2) (2,3) (3,2)".into())
}

fn lex_bounds() -> Outcome {
    let mut checked = 0;
    for (n, d) in [(2, 3), (3, 2)] {
        let census = enumerate_monomial_ideals(n, d).map_err(|e| e.to_string())?;
        for ideal in &census.ideals {
            let bound = lex_betti_bounds(&ideal.hilbert_vector(), n, d).map_err(|e| e.to_string())?;
            let beta = ideal.graded_betti_1();
            ensure(beta.le_componentwise(&bound), || format!("{ideal}: {beta:?} exceeds {bound:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} ideals, 0 violations"))
}

fn direct_polylog(n: u32, x: f64) -> f64 {
    let mut sum = CompensatedSum::default();
    let mut k = 1u32;
    loop {
        let term = f64::from(k).powi(n as i32) * x.powi(k as i32);
        sum.add(term);
        if term < 1e-20 && k > 10 {
            return sum.value();
        }
        k += 1;
    }
}

fn expected_generators() -> Outcome {
    let v = expected_beta1_limit(2, 1e-5, 1e-9).map_err(|e| e.to_string())?;
    ensure((11.0..=13.0).contains(&v.value), || format!("limit at p=1e-5 is {}", v.value))?;
    for p in [0.1, 0.01] {
        let s = expected_beta1_limit(2, p, 1e-10).map_err(|e| e.to_string())?;
        let l = expected_beta1_2vars_lambert(p, 1e-10).map_err(|e| e.to_string())?;
        ensure((s.value - l.value).abs() <= 1e-9, || format!("p={p}: series {} lambert {}", s.value, l.value))?;
    }
    for n in 1..=4u32 {
        for p in [0.5, 0.1, 0.01] {
            let s = expected_beta1_limit(n, p, 1e-9).map_err(|e| e.to_string())?;
            let (lo, hi) = beta1_limit_bounds(n, p).map_err(|e| e.to_string())?;
            ensure(lo <= s.value + s.error_bound && s.value - s.error_bound <= hi, || {
                format!("n={n} p={p}: {} outside [{lo}, {hi}]", s.value)
            })?;
        }
        for x in [0.1, 0.3, 0.5] {
            let closed = polylog_neg(n, x).map_err(|e| e.to_string())?;
            let direct = direct_polylog(n, x);
            ensure((closed - direct).abs() <= 1e-9, || format!("Li_-{n}({x}): {closed} vs {direct}"))?;
        }
    }
    ensure(tau(3, 4) == 6, || format!("tau_3(4) = {}", tau(3, 4)))?;
    Ok(format!("limit(2, 1e-5) = {:.6}", v.value))
}

fn costa_farber() -> Outcome {
    let cf = CfParams::new(2, vec![rational(3, 10), rational(3, 5)]).unwrap();
    let rows = cf_distribution_table(&cf).map_err(|e| e.to_string())?;
    ensure(rows.len() == 5, || format!("{} complexes for n=2", rows.len()))?;
    let mut total = Rational::zero();
    for r in &rows {
        ensure(r.agrees(), || format!("{}: {} / {} / {}", r.complex, r.formula, r.general_model, r.hierarchical))?;
        total += r.general_model.value();
    }
    ensure(total.is_one(), || format!("n=2 total {total}"))?;
    let cf3 = CfParams::new(3, vec![rational(2, 3), rational(1, 2), rational(1, 5)]).unwrap();
    let rows3 = cf_distribution_table(&cf3).map_err(|e| e.to_string())?;
    let hier = cf_hierarchical_distribution(&cf3).map_err(|e| e.to_string())?;
    ensure(hier.len() == rows3.len(), || format!("{} sampled complexes vs {} rows", hier.len(), rows3.len()))?;
    let mut total3 = Rational::zero();
    for r in &rows3 {
        ensure(r.agrees(), || format!("{}: {} / {} / {}", r.complex, r.formula, r.general_model, r.hierarchical))?;
        total3 += r.formula.value();
    }
    ensure(total3.is_one(), || format!("n=3 total {total3}"))?;
    Ok(format!("n=2: 5 complexes, n=3 r=2: {} complexes", rows3.len()))
}

fn monte_carlo() -> Outcome {
    let n_samples = 100_000u64;
    let seed = Seed::new(20_240_601);
    let mut report = Vec::new();
    for (prop, exact) in [(Property::ZeroIdeal, 1.0 / 32.0), (Property::DimEq(0), 9.0 / 16.0)] {
        let r = estimate(prop, 2, 2, 0.5, n_samples, seed).map_err(|e| e.to_string())?;
        let sigma = (exact * (1.0 - exact) / n_samples as f64).sqrt();
        ensure((r.freq - exact).abs() <= 3.0 * sigma, || format!("{prop}: {} vs {exact}", r.freq))?;
        let again = estimate(prop, 2, 2, 0.5, n_samples, seed).map_err(|e| e.to_string())?;
        let (a, b) = (serde_json::to_string(&r).unwrap(), serde_json::to_string(&again).unwrap());
        ensure(a == b, || format!("{prop}: rerun differs"))?;
        report.push(format!("{prop} {:.5}", r.freq));
    }
    let sampler = Sampler::er(&ErParams::new(3, 6, 0.1).unwrap()).unwrap();
    let render = |s: &Seed| sampler.sample_batch(s, 200).iter().map(|x| format_ideal(&x.ideal)).collect::<String>();
    ensure(render(&seed) == render(&seed), || "sample batch rerun differs".into())?;
    Ok(report.join(", "))
}

fn thresholds() -> Outcome {
    let d_grid = [10, 40, 160];
    let checks = [
        krull_threshold_check(1, 3, &d_grid, 0.5, true, 2000, 11),
        krull_threshold_check(1, 3, &d_grid, 0.5, false, 2000, 12),
        zero_ideal_threshold_check(2, &d_grid, 0.5, true, 2000, 13),
        zero_ideal_threshold_check(2, &d_grid, 0.5, false, 2000, 14),
        initdeg_band_check(3, 30, &[3, 6, 12, 25], 1.0, true, 2000, 15),
        initdeg_band_check(3, 30, &[3, 6, 12, 25], 1.0, false, 2000, 16),
    ];
    let mut report = Vec::new();
    for check in &checks {
        let out = run_threshold_check(check).map_err(|e| e.to_string())?;
        let freqs: Vec<String> = out.freqs().iter().map(|f| format!("{f:.3}")).collect();
        ensure(out.passed(), || format!("{}: freqs {freqs:?}", out.name))?;
        report.push(format!("[{}]", freqs.join(" ")));
    }
    Ok(report.join(" "))
}

fn homology() -> Outcome {
    let hollow = SimplicialComplex::from_facets(3, &[0b011, 0b101, 0b110]).unwrap();
    let points = SimplicialComplex::from_facets(2, &[0b01, 0b10]).unwrap();
    let simplex = SimplicialComplex::full_simplex(4).unwrap();
    ensure(z2_homology(&hollow).unwrap() == vec![0, 1, 0], || "hollow triangle".into())?;
    ensure(z2_homology(&points).unwrap() == vec![1, 0], || "two points".into())?;
    ensure(z2_homology(&simplex).unwrap().iter().all(|&b| b == 0), || "full simplex".into())?;

    let p_grid: Vec<f64> = (0..14).map(|k| 0.003 * 1.5f64.powi(k)).collect();
    let camp = homology_campaign(5, 4, &p_grid, 500, 3, HomologyVariant::Radical).map_err(|e| e.to_string())?;
    for i in 0..5 {
        ensure(camp.is_unimodal(i), || format!("b~_{i} curve not unimodal: {:?}", camp.freqs(i)))?;
    }
    let peaks: Vec<Option<usize>> = (0..5).map(|i| camp.peak(i)).collect();
    let present: Vec<usize> = peaks.iter().flatten().copied().collect();
    ensure(present.len() >= 3, || format!("too few non-trivial curves: {peaks:?}"))?;
    ensure(present.windows(2).all(|w| w[1] < w[0]), || format!("peaks not decreasing in i: {peaks:?}"))?;
    let peak_p: Vec<String> = present.iter().map(|&k| format!("{:.3}", p_grid[k])).collect();
    Ok(format!("peaks at p = {}", peak_p.join(", ")))
}

fn critical_region() -> Outcome {
    let rows = critical_region_check(CriticalRegime::Critical, &[(2, 2), (2, 5), (3, 3), (4, 4), (6, 2)]);
    for r in &rows {
        ensure(r.mean.is_one(), || format!("n={} D={}: mean {}", r.n, r.max_degree, r.mean))?;
        ensure(r.variance == Rational::one() - r.p.value(), || format!("variance {}", r.variance))?;
    }
    let (k1, k2) = (rational(1, 6), rational(2, 1));
    let grid: Vec<(usize, u32)> = (2..=8).map(|n| (n, 3)).collect();
    let rows = critical_region_check(CriticalRegime::NPowerMinusD, &grid);
    for r in &rows {
        ensure(r.mean >= k1 && r.mean <= k2, || format!("n={}: mean {} outside [1/6, 2]", r.n, r.mean))?;
    }
    Ok("E|B| = 1 and Var|B| = 1 - p at the critical point (not exactly 1); p = n^-3 means in [1/6, 2]".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("oracle equivalence", oracle_equivalence),
        ("principal ideals", principal_ideals),
        ("Krull dimension distribution", krull_distribution),
        ("Hilbert function distribution", hilbert_distribution),
        ("lex-segment Betti bounds", lex_bounds),
        ("expected number of generators", expected_generators),
        ("Costa-Farber equivalence", costa_farber),
        ("Monte Carlo consistency", monte_carlo),
        ("threshold trends", thresholds),
        ("homology", homology),
        ("critical region", critical_region),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.1}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.1}s): {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
