use super::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn p(n: i64, d: i64) -> Param {
    Param::ratio(n, d)
}

#[test]
fn graph_shape() {
    let g = incidence_graph(&Param::alpha()).unwrap();
    assert_eq!(g.len(), 12);
    assert_eq!(g.weight("E(0,0)", "L_{x+iy}"), Some(1));
    assert_eq!(g.weight("E(0,0)", "L_{x-iy}"), Some(1));
    let lp = g.index("L_{x+iy}").unwrap();
    let lm = g.index("L_{x-iy}").unwrap();
    assert_eq!(g.real_action[lp], lm);
    let lz = g.index("L_z").unwrap();
    for k in 0..5 {
        assert_eq!(g.weights[lz][k], 0);
    }
    assert_eq!(g.real_action[lz], lz);
    assert!(g.centers.is_empty());
    assert!((0..g.len()).all(|k| g.real_action[g.real_action[k]] == k));
}

#[test]
fn matchings_for_two_and_three() {
    let ga = incidence_graph(&p(2, 1)).unwrap();
    let gb = incidence_graph(&p(3, 1)).unwrap();
    let ms = admissible_matchings(&ga, &gb);
    // Count from an independent brute-force search.
    assert_eq!(ms.len(), 4);
    let identity: Vec<usize> = (0..12).collect();
    assert!(ms.contains(&identity));
    let pair_a = [ga.index("E(1,i)").unwrap(), ga.index("E(2,2i)").unwrap()];
    let ok_b = |names: [&str; 2]| {
        let mut v: Vec<usize> = names.iter().map(|n| gb.index(n).unwrap()).collect();
        v.sort_unstable();
        v
    };
    let plus = ok_b(["E(1,i)", "E(3,3i)"]);
    let minus = ok_b(["E(1,-i)", "E(3,-3i)"]);
    for m in &ms {
        let mut img: Vec<usize> = pair_a.iter().map(|&k| m[k]).collect();
        img.sort_unstable();
        assert!(img == plus || img == minus);
        for k in 0..12 {
            assert_eq!(m[ga.real_action[k]], gb.real_action[m[k]]);
        }
        assert!(solve_linear_witness(&ga, &gb, m).witness.is_none());
    }
}

#[test]
fn matchings_invert_under_swap() {
    let ga = incidence_graph(&p(2, 1)).unwrap();
    let gb = incidence_graph(&p(1, 2)).unwrap();
    let fwd = admissible_matchings(&ga, &gb);
    let back = admissible_matchings(&gb, &ga);
    assert_eq!(fwd.len(), back.len());
    for m in &fwd {
        let mut inv = vec![0; m.len()];
        for (i, &j) in m.iter().enumerate() {
            inv[j] = i;
        }
        assert!(back.contains(&inv));
    }
}

#[test]
fn witnesses() {
    let r = classify(&p(2, 1), &p(1, 2)).unwrap();
    assert_eq!(r.verdict, Verdict::Isomorphic);
    assert_eq!(r.witness, Some(IsoWitness::diag(q(1, 2), q(1, 2))));
    let r = classify(&p(3, 1), &p(3, 1)).unwrap();
    assert_eq!(r.witness, Some(IsoWitness::diag(q(1, 1), q(1, 1))));
    let r = classify(&p(2, 1), &p(3, 1)).unwrap();
    assert_eq!(r.verdict, Verdict::NotIsomorphic);
    assert!(r.witness.is_none());
    assert_eq!(r.matchings_examined, 4);
    assert!(r.traces.iter().all(|t| t.contains("inconsistent")));
}

#[test]
fn witness_checks() {
    assert!(verify_witness(&IsoWitness::diag(q(1, 2), q(1, 2)), &p(2, 1), &p(1, 2)).unwrap());
    assert!(verify_witness(&IsoWitness::diag(q(1, 1), q(-1, 1)), &p(5, 2), &p(5, 2)).unwrap());
    assert!(!verify_witness(&IsoWitness::diag(q(2, 1), q(3, 1)), &p(2, 1), &p(2, 1)).unwrap());
}

#[test]
fn forbidden() {
    assert!(matches!(
        classify(&p(1, 1), &p(2, 1)),
        Err(Error::ForbiddenParameter(_))
    ));
    assert!(matches!(
        classify(&p(2, 1), &p(0, 1)),
        Err(Error::ForbiddenParameter(_))
    ));
}

#[test]
fn json_shape() {
    let r = classify(&p(2, 1), &p(1, 2)).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(
        v["witness"],
        serde_json::json!([["1/2", "0"], ["0", "1/2"]])
    );
    assert_eq!(v["verdict"], "Isomorphic");
    assert_eq!(v["alpha"], "2");
}

#[test]
fn grid_predicate() {
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
    for &(an, ad) in &grid {
        for &(bn, bd) in &grid {
            let (a, b) = (q(an, ad), q(bn, bd));
            let r = classify(&p(an, ad), &p(bn, bd)).unwrap();
            let expect = a == b || &a * &b == q(1, 1);
            assert_eq!(r.verdict == Verdict::Isomorphic, expect, "{a} {b}");
            if let Some(w) = &r.witness {
                assert!(verify_witness(w, &p(an, ad), &p(bn, bd)).unwrap());
            }
            let back = classify(&p(bn, bd), &p(an, ad)).unwrap();
            assert_eq!(back.verdict, r.verdict);
        }
    }
}
