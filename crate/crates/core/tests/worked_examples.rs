//! Worked examples with known answers, checked end to end.

mod common;

use std::collections::BTreeSet;

use greenseq::render::{render_chord_svg, Mode, RenderSpec, Source};
use greenseq::{
    build_sk, build_skl, collapse, dn_charge, is_linear_set, parse_quiver, project_charge, project_set, q,
    spliced_stable_set, stable_set, valid_pairs, witness_linear, witness_spliced, CentralCharge, Error, QuiverKind,
    Rational, SplicedPath, StringModule,
};

fn m(i: i64, j: i64) -> StringModule {
    StringModule::new(i, j)
}

/// Charge whose dual vertices `p_k, ..., p_{k+n}` are the given points.
fn charge_through(n: usize, k: i64, pts: &[(Rational, Rational)]) -> CentralCharge {
    let mut a = vec![Rational::zero(); n];
    let mut b = vec![Rational::zero(); n];
    for (s, w) in pts.windows(2).enumerate() {
        let idx = (k + s as i64).rem_euclid(n as i64) as usize;
        a[idx] = &w[1].1 - &w[0].1;
        b[idx] = &w[1].0 - &w[0].0;
    }
    CentralCharge::new(a, b).unwrap()
}

#[test]
fn template_vertices_give_the_24_chords() {
    let quiver = parse_quiver("At:-++--+").unwrap();
    let target = build_skl(&quiver, 2, 5).unwrap().modules;
    assert_eq!(target.len(), 24);
    // any positive e below 2/5 works
    for e in [q(1, 5), q(1, 10), q(39, 100)] {
        let pts = vec![
            (q(0, 1), q(0, 1)),
            (q(2, 1), q(2, 1)),
            (q(4, 1), &e - &q(2, 1)),
            (q(6, 1), e.clone()),
            (q(7, 1), &e + &q(2, 1)),
            (q(12, 1), q(-2, 1)),
            (q(13, 1), q(0, 1)),
        ];
        let z = charge_through(6, 2, &pts);
        let (x1, y1) = z.dual_vertex(&quiver, 1);
        let (x2, y2) = z.dual_vertex(&quiver, 2);
        assert_eq!((x1 - x2, y1 - y2), (q(-1, 1), q(-2, 1)));
        assert_eq!(stable_set(&quiver, &z).unwrap(), target, "e = {e}");
    }
}

#[test]
fn every_pair_on_a_3_2_quiver_is_spliced() {
    let quiver = parse_quiver("At:++-+-").unwrap();
    let pairs = valid_pairs(&quiver);
    assert_eq!(pairs.len(), 6);
    for (k, l) in pairs {
        let p = witness_spliced(&quiver, k, l).unwrap();
        let set = spliced_stable_set(&quiver, &p).unwrap();
        assert_eq!(set.len(), 16);
        assert_eq!(set, build_skl(&quiver, k, l).unwrap().modules);
    }
}

#[test]
fn kronecker_witnesses_are_the_two_simples() {
    let kr = parse_quiver("At:+-").unwrap();
    let want = vec![m(0, 1), m(1, 2)];
    assert_eq!(build_skl(&kr, 1, 2).unwrap().modules, want);
    assert_eq!(stable_set(&kr, &witness_linear(&kr, 1, 2).unwrap()).unwrap(), want);
    let p = witness_spliced(&kr, 1, 2).unwrap();
    assert_eq!(spliced_stable_set(&kr, &p).unwrap(), want);
}

#[test]
fn short_gaps_are_always_linear() {
    for qv in common::all_affine(8) {
        for (k, l) in valid_pairs(&qv) {
            if l - k <= 2 {
                assert!(is_linear_set(&qv, k, l).unwrap().linear, "{qv} ({k},{l})");
            }
        }
    }
}

#[test]
fn small_sides_are_always_linear() {
    for qv in common::all_affine(8) {
        if qv.a() <= 2 || qv.b() <= 2 {
            for (k, l) in valid_pairs(&qv) {
                assert!(is_linear_set(&qv, k, l).unwrap().linear, "{qv} ({k},{l})");
            }
        }
    }
}

#[test]
fn cycle_sets_are_distinct_and_realized() {
    for n in 4..=7usize {
        let qv = parse_quiver(&format!("Dcyc:{n}")).unwrap();
        let sets: BTreeSet<Vec<StringModule>> = (1..=n as i64).map(|k| build_sk(&qv, k).unwrap()).collect();
        assert_eq!(sets.len(), n);
    }
    let q4 = parse_quiver("Dcyc:4").unwrap();
    assert_eq!(build_sk(&q4, 3).unwrap().len(), 9);
    let q5 = parse_quiver("Dcyc:5").unwrap();
    let s1 = build_sk(&q5, 1).unwrap();
    let want: BTreeSet<StringModule> = (1..6)
        .flat_map(|i| ((i + 1)..=6).filter(move |j| j - i < 5).map(move |j| (i, j)))
        .map(|(i, j)| q5.canonicalize(m(i, j)))
        .collect();
    assert_eq!(s1.iter().copied().collect::<BTreeSet<_>>(), want);
}

#[test]
fn collapsing_the_only_negative_arrow_gives_the_cycle() {
    let qv = parse_quiver("At:++++-").unwrap();
    let p = collapse(&qv, &[5]).unwrap();
    assert_eq!(p.target.kind(), QuiverKind::CycleNilpotent);
    assert_eq!(p.target.n(), 4);
    assert!(matches!(collapse(&qv, &[1, 2, 3, 4, 5]), Err(Error::InvalidCollapse(_))));
    let p = collapse(&parse_quiver("At:-++--").unwrap(), &[1]).unwrap();
    assert_eq!(p.target.to_string(), "At:++--");
    assert!(project_set(&p, &[]).is_empty());
}

#[test]
fn projected_linear_witness_lands_in_a_maximal_set() {
    let qv = parse_quiver("At:-++--+").unwrap();
    let z = witness_linear(&qv, 2, 4).unwrap();
    let set = stable_set(&qv, &z).unwrap();
    for xs in [vec![1], vec![3], vec![6], vec![1, 6]] {
        let p = collapse(&qv, &xs).unwrap();
        let zp = project_charge(&p, &z).unwrap();
        let projected: BTreeSet<StringModule> = project_set(&p, &set).into_iter().collect();
        let target: BTreeSet<StringModule> = stable_set(&p.target, &zp).unwrap().into_iter().collect();
        assert!(projected.is_subset(&target), "X = {xs:?}");
        let maximal = valid_pairs(&p.target)
            .into_iter()
            .map(|(k, l)| build_skl(&p.target, k, l).unwrap().modules.into_iter().collect::<BTreeSet<_>>())
            .any(|s| projected.is_subset(&s));
        assert!(maximal, "X = {xs:?}");
    }
}

#[test]
fn degenerate_splice_drops_slope_zero() {
    let qv = parse_quiver("At:++--").unwrap();
    let z = witness_linear(&qv, 1, 3).unwrap();
    let p = SplicedPath::new(&qv, z.clone(), z.clone()).unwrap();
    let want: Vec<StringModule> = stable_set(&qv, &z)
        .unwrap()
        .into_iter()
        .filter(|x| !z.slope(&qv, *x).is_zero())
        .collect();
    assert_eq!(spliced_stable_set(&qv, &p).unwrap(), want);
    let mut a = z.a().to_vec();
    a.swap(0, 1);
    let other = CentralCharge::new(a, z.b().to_vec()).unwrap();
    assert!(matches!(SplicedPath::new(&qv, z, other), Err(Error::SpliceInvalid(_))));
}

#[test]
fn cycle_chord_diagram_has_14_solid_chords() {
    let q5 = parse_quiver("Dcyc:5").unwrap();
    let z = dn_charge(&q5, 1).unwrap();
    let svg = render_chord_svg(&q5, Source::Linear(&z), &RenderSpec::new(Mode::Chord)).unwrap();
    assert_eq!(svg.matches(r#"class="chord stable""#).count(), 14);
    assert_eq!(svg, render_chord_svg(&q5, Source::Linear(&z), &RenderSpec::new(Mode::Chord)).unwrap());
}

#[test]
fn homs_on_a_2() {
    let a2 = parse_quiver("A:-").unwrap();
    assert_eq!(a2.hom_dim(m(0, 2), m(0, 1)), 1);
    assert_eq!(a2.hom_dim(m(0, 2), m(1, 2)), 0);
    assert_eq!(common::hom_nullspace(&a2, m(0, 2), m(0, 1)), 1);
    assert_eq!(common::hom_nullspace(&a2, m(0, 2), m(1, 2)), 0);
}
