use super::*;
use crate::kernel::{GaussianRational, VarFlag};
use crate::surfaces::{y_configuration, Param};
use proptest::prelude::*;

fn y_alpha() -> PointConfiguration {
    y_configuration(&Param::alpha(), &Param::alpha(), VarFlag::Real).unwrap()
}

#[test]
fn basic_numbers() {
    let l = DivisorClass::new(1, vec![1, 1, 1, 0, 0]);
    assert_eq!(l.self_intersection(), -2);
    let e0 = DivisorClass::exceptional(5, 0);
    assert_eq!(e0.self_intersection(), -1);
    assert_eq!(intersection_number(&e0, &l).unwrap(), 1);
    assert!(matches!(
        intersection_number(&e0, &DivisorClass::exceptional(4, 0)),
        Err(Error::LatticeMismatch)
    ));
}

#[test]
fn genus_values() {
    assert_eq!(
        arithmetic_genus_doubled(&DivisorClass::new(1, vec![0; 5])).unwrap(),
        0
    );
    assert_eq!(
        arithmetic_genus_doubled(&DivisorClass::new(3, vec![1; 5])).unwrap(),
        2
    );
    assert_eq!(
        arithmetic_genus_doubled(&DivisorClass::new(1, vec![0, 1, 0, 1, 0])).unwrap(),
        0
    );
    assert!(matches!(
        arithmetic_genus_doubled(&DivisorClass::exceptional(5, 1)),
        Err(Error::NotACurveClass(_))
    ));
}

#[test]
fn lines_through_centers() {
    let c = y_alpha();
    let p = |k: usize| &c.centers[k].point;
    assert_eq!(
        linear_form_name(&line_through(p(1), p(2)).unwrap()),
        "L_{x+iy}"
    );
    assert_eq!(
        linear_form_name(&line_through(p(3), p(2)).unwrap()),
        "L_{(α+1)x+(α-1)iy-2αz}"
    );
    assert_eq!(
        linear_form_name(&line_through(p(2), p(4)).unwrap()),
        "L_{x-αz}"
    );
    assert!(matches!(
        line_through(p(1), p(1)),
        Err(Error::IdenticalPoints)
    ));
    let scaled = P2Point::new(
        p(2).coords
            .clone()
            .map(|e| e.scale(&GaussianRational::from_integer(3))),
    );
    assert!(matches!(
        line_through(p(2), &scaled),
        Err(Error::IdenticalPoints)
    ));
}

#[test]
fn eleven_records() {
    let c = y_alpha();
    let e = enumerate_negative_classes(&c, 6).unwrap();
    assert!(e.report.passed(), "{}", e.report);
    assert_eq!(
        e.names(),
        [
            "E(0,0)",
            "E(1,i)",
            "E(α,αi)",
            "E(1,-i)",
            "E(α,-αi)",
            "L_{x+iy}",
            "L_{x-iy}",
            "L_{x-z}",
            "L_{(α+1)x+(α-1)iy-2αz}",
            "L_{(α+1)x-(α-1)iy-2αz}",
            "L_{x-αz}",
        ]
    );
    let mut pats = e.patterns();
    pats.sort();
    assert_eq!(
        pats,
        vec![
            vec![0, 1, 0, 1],
            vec![0, 1, 1, 0],
            vec![1, 0, 0, 1],
            vec![1, 0, 1, 0]
        ]
    );
    assert!(e
        .survivors_per_degree
        .iter()
        .all(|&(d, k)| d == 1 || k == 0));
}

#[test]
fn sweep_is_stable() {
    let c = y_alpha();
    let base = enumerate_negative_classes(&c, 1).unwrap().names().join(";");
    for d in 2..=6 {
        assert_eq!(
            enumerate_negative_classes(&c, d).unwrap().names().join(";"),
            base
        );
    }
}

#[test]
fn realizations_vanish_exactly() {
    let c = y_alpha();
    for r in enumerate_negative_classes(&c, 1).unwrap().records {
        if let Some(f) = &r.form {
            for (k, ctr) in c.centers.iter().enumerate() {
                assert_eq!(
                    eval_form(f, &ctr.point).unwrap().is_zero(),
                    r.class.m[k] == 1,
                    "{} at {}",
                    r.name,
                    ctr.label
                );
            }
        }
    }
}

#[test]
fn matrix_diagonal() {
    let c = y_alpha();
    let mut recs = enumerate_negative_classes(&c, 1).unwrap().records;
    recs.push(line_at_infinity(&c).unwrap());
    let m = intersection_matrix(&recs).unwrap();
    let diag: Vec<i64> = (0..m.len()).map(|i| m[i][i]).collect();
    assert_eq!(diag, [-1, -1, -1, -1, -1, -2, -2, -1, -1, -1, -1, 1]);
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            assert_eq!(*e, m[j][i]);
        }
    }
}

#[test]
fn zigzag() {
    let z = boundary_zigzag(&y_alpha()).unwrap();
    assert_eq!(z.chain, ["L_{x+iy}", "L_z", "L_{x-iy}"]);
    assert_eq!(z.self_intersections, [-2, 1, -2]);
    assert_eq!(z.consecutive, [1, 1]);
    let c = y_alpha();
    let a = line_class(&c, &c.poly("x + i*y").unwrap()).unwrap();
    let b = line_class(&c, &c.poly("x - i*y").unwrap()).unwrap();
    assert_eq!(intersection_number(&a, &b).unwrap(), 0);
}

#[test]
fn rational_parameter() {
    let c = y_configuration(&Param::integer(2), &Param::integer(2), VarFlag::Real).unwrap();
    let e = enumerate_negative_classes(&c, 3).unwrap();
    assert!(e.report.passed(), "{}", e.report);
    assert_eq!(e.records.len(), 11);
    assert_eq!(e.records[2].name, "E(2,2i)");
    assert_eq!(e.records[8].name, "L_{x+(1/3)iy-(4/3)z}");
}

fn class(n: usize) -> impl Strategy<Value = DivisorClass> {
    (-4i64..5, proptest::collection::vec(-3i64..4, n)).prop_map(|(d, m)| DivisorClass::new(d, m))
}

proptest! {
    #[test]
    fn symmetric_and_bilinear(a in class(5), b in class(5), c in class(5), k in -3i64..4) {
        let ab = intersection_number(&a, &b).unwrap();
        prop_assert_eq!(ab, intersection_number(&b, &a).unwrap());
        let lhs = intersection_number(&a.add(&c.scaled(k)).unwrap(), &b).unwrap();
        prop_assert_eq!(lhs, ab + k * intersection_number(&c, &b).unwrap());
    }
}
