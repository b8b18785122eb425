use super::*;
use crate::kernel::parse_poly;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn origin_chart_of_blowup() {
    let spec = ModificationSpec::from_json(r#"{"vars":["x","y"],"generators":["x","y"],"f":"x"}"#)
        .unwrap();
    let r = rees_presentation(&spec).unwrap();
    let expect = Ideal::parse(&r.ambient, &["T1 - 1", "x*T2 - y"]).unwrap();
    assert!(r.ideal.equals(&expect).unwrap(), "{r}");
    assert!(r.soundness(&spec).unwrap().passed());
}

#[test]
fn f_outside_centre() {
    let spec =
        ModificationSpec::from_json(r#"{"vars":["x","y"],"generators":["x","y"],"f":"x + 1"}"#)
            .unwrap();
    assert!(matches!(
        rees_presentation(&spec),
        Err(Error::FNotInIdeal(_))
    ));
    assert!(ModificationSpec::from_json(r#"{"vars":["x"],"generators":[]}"#).is_err());
}

#[test]
fn json_round_trip() {
    let spec = plane_spec(&Param::alpha()).unwrap();
    let doc = spec.to_document();
    assert_eq!(doc.constraints.len(), 2);
    let text = serde_json::to_string(&doc).unwrap();
    let back = ModificationSpec::from_json(&text).unwrap();
    assert_eq!(back.to_document(), doc);
}

#[test]
fn symbolic_presentation_relations() {
    let spec = plane_spec(&Param::alpha()).unwrap();
    let r = rees_presentation(&spec).unwrap();
    let p = |s: &str| parse_poly(&r.ambient, s).unwrap();
    assert!(r.ideal.contains(&p("T1 - 1")).unwrap());
    assert!(r.ideal.contains(&p("y*T2 - x*T3")).unwrap());
    assert!(r
        .ideal
        .contains(&p("x*T2 + y*T3 - (x - 1)*(x - alpha)"))
        .unwrap());
    assert!(!r.ideal.contains(&p("T2")).unwrap());
    assert!(r.soundness(&spec).unwrap().passed());
}

#[test]
fn fibres() {
    let f2 = fiber_presentation(&Param::integer(2)).unwrap();
    assert_eq!(f2.vars().names(), ["x", "y", "T1", "T2", "T3"]);
    let expect = Ideal::parse(
        f2.vars(),
        &[
            "T1 - 1",
            "T2*x + T3*y - x^2 + 3*x - 2",
            "T2*y - T3*x",
            "T3*x^2 + T3*y^2 - x^2*y + 3*x*y - 2*y",
        ],
    )
    .unwrap();
    assert!(f2.equals(&expect).unwrap());
    assert!(matches!(
        fiber_presentation(&Param::integer(1)),
        Err(Error::ForbiddenParameter(_))
    ));
    assert!(fiber_presentation(&Param::alpha())
        .unwrap()
        .vars()
        .index_of("alpha")
        .is_some());
}

#[test]
fn fibre_matches_surface() {
    for a in [q(2, 1), q(3, 1), q(-1, 1), q(1, 2)] {
        let rep = match_fiber_to_s(&Param::Rational(a.clone())).unwrap();
        assert!(rep.passed(), "{a}: {rep}");
    }
    assert!(matches!(
        match_fiber_to_s(&Param::integer(5)),
        Err(Error::InvalidSpec(_))
    ));
}

#[test]
fn jacobian_examples() {
    let s = make_s(&Param::integer(2), &Param::integer(2)).unwrap();
    let pt = |v: [i64; 4]| v.map(GaussianRational::from_integer);
    assert_eq!(jacobian_rank_at(s.ideal(), &pt([1, 0, 0, 0])).unwrap(), 2);
    assert!(matches!(
        jacobian_rank_at(s.ideal(), &pt([1, 1, 1, 1])),
        Err(Error::PointNotOnVariety(_))
    ));
    let v = VarTable::new(&["x", "y"]).unwrap();
    let xy = Ideal::parse(&v, &["x*y"]).unwrap();
    assert_eq!(jacobian_rank_at(&xy, &pt([0, 0, 0, 0])[..2]).unwrap(), 0);
}

#[test]
fn smooth_at_chart_points() {
    for a in [q(2, 1), q(3, 1), q(-1, 1), q(1, 2)] {
        let rep = smoothness_spot_check(&a, 5).unwrap();
        assert_eq!(rep.claims.len(), 5);
        assert!(rep.passed(), "{rep}");
    }
}
