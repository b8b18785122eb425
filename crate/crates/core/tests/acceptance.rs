//! Acceptance suite: one PASS/FAIL line per criterion, each with a pinned
//! time limit. Runs without the libtest harness, one criterion at a time.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use realforms::classification::{classify, verify_witness, IsoWitness, Verdict};
use realforms::intersection::enumerate_negative_classes;
use realforms::kernel::{
    buchberger, groebner::default_step_budget, parse_poly, GaussianRational, Monomial,
    MonomialOrder, Poly, VarFlag, VarTable,
};
use realforms::modification::{
    match_fiber_to_s, plane_spec, rees_presentation, smoothness_spot_check,
};
use realforms::surfaces::{
    build_sigma, isomorphism_chain_report, make_s, proportional_forms, verify_eta_chart,
    verify_nu_chart, verify_p2_automorphism, verify_remark_coordinate_change, verify_swap_iso,
    y_configuration, Param,
};

fn criterion(name: &str, limit_s: u64, body: impl FnOnce() -> Result<String, String>) -> bool {
    let limit = Duration::from_secs(limit_s);
    let t = Instant::now();
    let outcome = body();
    let elapsed = t.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; over the time limit")),
        Err(e) => (false, e),
    };
    println!(
        "[{}] {name}: {detail} ({:.2}s, limit {limit_s}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn r(n: i64, d: i64) -> Param {
    Param::ratio(n, d)
}

fn defining_equations_suite() -> bool {
    criterion(
        "defining equations, swap and family real structure",
        5,
        || {
            let mut pairs = vec![(Param::alpha(), Param::beta())];
            pairs.extend([
                (r(2, 1), r(3, 1)),
                (r(-1, 1), r(1, 2)),
                (r(1, 3), r(5, 1)),
                (r(-2, 1), r(-2, 1)),
                (r(5, 2), r(2, 5)),
                (r(3, 1), r(-1, 3)),
            ]);
            for (a, b) in &pairs {
                let s = make_s(a, b).map_err(|e| e.to_string())?;
                ensure(s.generators().len() == 3, format!("S[{a},{b}] generators"))?;
                let rep = verify_swap_iso(a, b).map_err(|e| e.to_string())?;
                ensure(rep.passed(), rep.to_string())?;
                for p in [a, b] {
                    build_sigma(p).map_err(|e| format!("sigma at {p}: {e}"))?;
                }
            }
            Ok(format!("symbolic and {} rational pairs", pairs.len() - 1))
        },
    )
}

fn real_coordinate_change() -> bool {
    criterion(
        "real coordinates: conjugation and displayed equations",
        10,
        || {
            let rep = verify_remark_coordinate_change().map_err(|e| e.to_string())?;
            ensure(rep.passed(), rep.to_string())?;
            ensure(
                rep.claims.iter().any(|c| c.id.contains("ideal-equality")),
                "ideal equality claim missing",
            )?;
            ensure(
                rep.claims.iter().any(|c| c.id.contains("conjugation")),
                "conjugation claim missing",
            )?;
            Ok(format!("{} claims, symbolic α", rep.claims.len()))
        },
    )
}

fn chart_and_chain_suite() -> bool {
    criterion(
        "charts, plane automorphism and the isomorphism chain",
        10,
        || {
            let (a, b) = (Param::alpha(), Param::beta());
            for rep in [
                verify_nu_chart(&a, &b),
                verify_eta_chart(&a, &b),
                verify_p2_automorphism(&a, &b),
            ] {
                let rep = rep.map_err(|e| e.to_string())?;
                ensure(rep.passed(), rep.to_string())?;
            }
            let chain = isomorphism_chain_report(&r(2, 1), &r(3, 1), &r(4, 1), &r(5, 1))
                .map_err(|e| e.to_string())?;
            ensure(chain.passed(), chain.report.to_string())?;
            ensure(chain.links.len() == 6, "six links")?;
            let comp = chain.composite.as_ref().ok_or("no composite map")?;
            ensure(
                comp.forward.codomain.name() == "S[4,5]",
                comp.forward.codomain.name().to_string(),
            )?;
            Ok("W[2,3] ~ W[4,5] through 6 certified links".into())
        },
    )
}

fn negative_curve_enumeration() -> bool {
    criterion("negative curves of the blown-up plane", 10, || {
        let c = y_configuration(&Param::alpha(), &Param::alpha(), VarFlag::Real)
            .map_err(|e| e.to_string())?;
        let e = enumerate_negative_classes(&c, 1).map_err(|e| e.to_string())?;
        ensure(e.report.passed(), e.report.to_string())?;
        let expected: [(&str, Option<&str>, i64, [i64; 5]); 11] = [
            ("E(0,0)", None, 0, [-1, 0, 0, 0, 0]),
            ("E(1,i)", None, 0, [0, -1, 0, 0, 0]),
            ("E(α,αi)", None, 0, [0, 0, -1, 0, 0]),
            ("E(1,-i)", None, 0, [0, 0, 0, -1, 0]),
            ("E(α,-αi)", None, 0, [0, 0, 0, 0, -1]),
            ("L_{x+iy}", Some("x + i*y"), 1, [1, 1, 1, 0, 0]),
            ("L_{x-iy}", Some("x - i*y"), 1, [1, 0, 0, 1, 1]),
            ("L_{x-z}", Some("x - z"), 1, [0, 1, 0, 1, 0]),
            (
                "L_{(α+1)x+(α-1)iy-2αz}",
                Some("(alpha+1)*x + (alpha-1)*i*y - 2*alpha*z"),
                1,
                [0, 0, 1, 1, 0],
            ),
            (
                "L_{(α+1)x-(α-1)iy-2αz}",
                Some("(alpha+1)*x - (alpha-1)*i*y - 2*alpha*z"),
                1,
                [0, 1, 0, 0, 1],
            ),
            ("L_{x-αz}", Some("x - alpha*z"), 1, [0, 0, 1, 0, 1]),
        ];
        ensure(
            e.records.len() == 11,
            format!("{} records", e.records.len()),
        )?;
        for (rec, (name, form, d, m)) in e.records.iter().zip(expected) {
            ensure(rec.name == name, format!("{} != {name}", rec.name))?;
            ensure(
                rec.class.d == d && rec.class.m == m,
                format!("class of {name}: {:?}", rec.class),
            )?;
            if let Some(text) = form {
                let want = parse_poly(&c.vars, text).map_err(|e| e.to_string())?;
                let got = rec.form.as_ref().ok_or(format!("{name} has no equation"))?;
                ensure(
                    proportional_forms(got, &want).map_err(|e| e.to_string())?,
                    format!("equation of {name}"),
                )?;
            }
        }
        let base = e.names();
        for d in 2..=6 {
            let again = enumerate_negative_classes(&c, d).map_err(|e| e.to_string())?;
            ensure(
                again.names() == base,
                format!("new classes at degree bound {d}"),
            )?;
        }
        Ok("11 records; degree sweep to 6 adds nothing".into())
    })
}

fn classification_grid() -> bool {
    criterion("classification on the 10-element grid", 60, || {
        let grid = [
            (1, 3),
            (-1, 3),
            (1, 2),
            (-1, 2),
            (2, 1),
            (-2, 1),
            (3, 1),
            (-3, 1),
            (2, 5),
            (5, 2),
        ];
        let mut iso = 0;
        for &(an, ad) in &grid {
            for &(bn, bd) in &grid {
                let (a, b) = (r(an, ad), r(bn, bd));
                let res = classify(&a, &b).map_err(|e| e.to_string())?;
                let expect = an * bd == bn * ad || q(an, ad) * q(bn, bd) == BigRational::one();
                ensure(
                    (res.verdict == Verdict::Isomorphic) == expect,
                    format!("verdict for ({a}, {b})"),
                )?;
                if res.verdict == Verdict::Isomorphic {
                    iso += 1;
                    let w = res
                        .witness
                        .as_ref()
                        .ok_or(format!("no witness for ({a}, {b})"))?;
                    ensure(
                        verify_witness(w, &a, &b).map_err(|e| e.to_string())?,
                        format!("witness for ({a}, {b})"),
                    )?;
                }
            }
        }
        let res = classify(&r(2, 1), &r(1, 2)).map_err(|e| e.to_string())?;
        ensure(
            res.witness == Some(IsoWitness::diag(q(1, 2), q(1, 2))),
            "witness for (2, 1/2)",
        )?;
        Ok(format!(
            "100 pairs, {iso} isomorphic with verified witnesses"
        ))
    })
}

fn rees_presentation_and_fibres() -> bool {
    criterion("Rees presentation and fibre matching", 60, || {
        let r0 = rees_presentation(&plane_spec(&Param::alpha()).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        for rel in ["T1 - 1", "y*T2 - x*T3"] {
            let p = parse_poly(&r0.ambient, rel).map_err(|e| e.to_string())?;
            ensure(
                r0.ideal.contains(&p).map_err(|e| e.to_string())?,
                format!("{rel} missing"),
            )?;
        }
        for a in [2, 3, -1] {
            let rep = match_fiber_to_s(&Param::integer(a)).map_err(|e| e.to_string())?;
            ensure(rep.passed(), rep.to_string())?;
        }
        Ok("symbolic relations present; fibres at 2, 3, -1 match S".into())
    })
}

fn random_poly() -> impl Strategy<Value = Poly> {
    let term = (-4i64..5, 1i64..3, proptest::collection::vec(0u32..3, 3));
    proptest::collection::vec(term, 1..4).prop_map(|ts| {
        let v = VarTable::new(&["x", "y", "z"]).unwrap();
        Poly::from_terms(
            &v,
            ts.into_iter().map(|(n, d, e)| {
                (
                    Monomial::from_exponents(e),
                    GaussianRational::from_ratio(n, d),
                )
            }),
        )
    })
}

fn kernel_oracles() -> bool {
    criterion(
        "kernel: hand basis and 100 randomized reduction checks",
        10,
        || {
            let v = VarTable::new(&["x", "y"]).unwrap();
            let gens = ["x - y^2", "x*y - 1"].map(|s| parse_poly(&v, s).unwrap());
            let gb = buchberger(&v, &gens, &MonomialOrder::Lex, default_step_budget())
                .map_err(|e| e.to_string())?;
            let want = ["y^3 - 1", "x - y^2"].map(|s| parse_poly(&v, s).unwrap());
            ensure(gb.polys() == want, format!("{:?}", gb.polys()))?;

            let mut runner = TestRunner::new(Config {
                cases: 100,
                failure_persistence: None,
                ..Config::default()
            });
            let strat = (
                proptest::collection::vec(random_poly(), 1..4),
                random_poly(),
            );
            runner
                .run(&strat, |(gens, p)| {
                    let v = p.vars().clone();
                    let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
                    prop_assume!(!gens.is_empty());
                    let ord = MonomialOrder::Grevlex;
                    let gb = buchberger(&v, &gens, &ord, default_step_budget()).unwrap();
                    prop_assert!(gb.s_pairs_reduce_to_zero());
                    let nf = gb.normal_form(&p, &ord).unwrap();
                    prop_assert_eq!(gb.normal_form(&nf, &ord).unwrap(), nf);
                    Ok(())
                })
                .map_err(|e| e.to_string())?;
            Ok("basis {x - y^2, y^3 - 1}; 100 cases".into())
        },
    )
}

fn smoothness_spot_checks() -> bool {
    criterion("Jacobian rank 2 at chart points", 5, || {
        for a in [q(2, 1), q(3, 1), q(-1, 1), q(1, 2)] {
            let rep = smoothness_spot_check(&a, 5).map_err(|e| e.to_string())?;
            ensure(rep.claims.len() == 5 && rep.passed(), rep.to_string())?;
        }
        Ok("5 points for each of 2, 3, -1, 1/2 (spot-checked)".into())
    })
}

fn main() -> ExitCode {
    let results = [
        defining_equations_suite(),
        real_coordinate_change(),
        chart_and_chain_suite(),
        negative_curve_enumeration(),
        classification_grid(),
        rees_presentation_and_fibres(),
        kernel_oracles(),
        smoothness_spot_checks(),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
