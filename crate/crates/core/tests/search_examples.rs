use num_bigint::BigInt;
use pcflab::ring::{unit_power, RingElem};
use pcflab::search::*;
use pcflab::variety::{e_curve_residual, family_orbit, goods_residual, lift_e_to_12, uw, TargetRoots};

fn e(s: &str) -> RingElem {
    RingElem::parse(s, 2).unwrap()
}

#[test]
fn ljunggren() {
    let sols = ljunggren_oracle(1000);
    let xs: std::collections::BTreeSet<BigInt> = sols.iter().map(|(x, _)| x.clone()).collect();
    assert_eq!(xs, [-239, -1, 1, 239].into_iter().map(BigInt::from).collect());
    assert_eq!(sols.len(), 8);
    assert!(ljunggren_oracle(0).is_empty());
    assert_eq!(ljunggren_oracle(13).len(), 8);
    assert_eq!(ljunggren_oracle(12).len(), 4);
}

#[test]
fn unit_divisors() {
    let w = RingElem::w();
    assert_eq!(unit_divisor_enum(&w, 1).unwrap().len(), 12);
    assert_eq!(unit_divisor_enum(&RingElem::one(), 1).unwrap().len(), 6);
    let big = unit_divisor_enum(&w, 20).unwrap();
    let u = RingElem::u();
    let bs: Vec<_> = big.iter().map(|c| c.b.clone()).collect();
    assert!(bs.contains(&unit_power(&u, 7).unwrap()));
    assert!(bs.contains(&-(&w * &unit_power(&u, 15).unwrap())));
    assert!(big.iter().all(|c| RingElem::rational(c.b.norm()) == RingElem::int(c.norm)));
    assert!(unit_divisor_enum(&RingElem::int(3), 1).is_err());
}

#[test]
fn e_curve_over_integers() {
    let s = solve_e_curve(&2.into(), 0, 1, true).unwrap();
    let mut want: Vec<(RingElem, RingElem)> = [(1, 1), (-1, 1), (-1, -2), (1, -2), (0, 2)].iter().map(|&(a, b)| (a.into(), b.into())).collect();
    want.sort();
    assert_eq!(s.points, want);
}

#[test]
fn e_curve_over_z_sqrt2() {
    let pi = uw();
    let s = solve_e_curve(&pi, 20, 2, true).unwrap();
    assert_eq!(s.points.len(), 21);
    assert!(s.points.iter().all(|(a, b)| e_curve_residual(&pi, a, b).is_zero()));
    assert!(s.points.contains(&(0.into(), pi.clone())));
    assert!(s.points.contains(&(e("-149266+105547*w"), e("-390050-275807*w"))));
    let small = solve_e_curve(&pi, 2, 2, true).unwrap();
    assert!(small.points.len() < 21);
    assert!(small.points.iter().all(|p| s.points.contains(p)));
}

#[test]
fn filters_are_sound() {
    let pi = uw();
    for kmax in [3, 10, 20] {
        let f = solve_e_curve(&pi, kmax, 2, true).unwrap();
        let u = solve_e_curve(&pi, kmax, 2, false).unwrap();
        assert_eq!(f.points, u.points, "kmax {kmax}");
        assert_eq!(f.stats.candidates, u.stats.candidates);
        assert_eq!(u.stats.rejected_norm_mod8 + u.stats.rejected_mod4, 0);
        assert!(f.stats.accepted == u.stats.accepted);
        let st = &f.stats;
        assert_eq!(st.candidates, st.rejected_norm_mod8 + st.rejected_not_integral + st.rejected_mod4 + st.rejected_not_square + st.accepted);
    }
    let (a, sa) = search_22_03(20, true).unwrap();
    let (b, sb) = search_22_03(20, false).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 16);
    assert!(sa.rejected_norm_mod8 > 0 && sb.rejected_norm_mod8 == 0);
}

#[test]
fn solutions_grow_with_kmax() {
    let pi = uw();
    let mut prev = 0;
    for kmax in 0..=20 {
        let n = solve_e_curve(&pi, kmax, 2, true).unwrap().points.len();
        assert!(n >= prev);
        prev = n;
    }
    assert_eq!(prev, 21);
}

#[test]
fn solution_set_closed_under_family() {
    let pi = uw();
    let s = solve_e_curve(&pi, 20, 2, true).unwrap();
    let lifted: Vec<_> = s.points.iter().map(|(a, b)| lift_e_to_12(&pi, a, b).unwrap()).collect();
    for (y, x) in &lifted {
        if x.is_zero() {
            continue;
        }
        for q in family_orbit(y, x).unwrap() {
            assert!(goods_residual(&pi, &q.0, &q.1).is_zero());
            assert!(lifted.contains(&q));
        }
    }
}

#[test]
fn box_searches() {
    let t = TargetRoots::sqrt_of(&2.into());
    let found = search_03_box(&t, 5, 1);
    for p in [[1, 1, 0], [-1, -1, 0], [3, -1, 2], [-3, 1, -2]] {
        assert!(found.contains(&p.iter().map(|&x| RingElem::int(x)).collect()), "{p:?}");
    }
    let z21 = search_21_box(&t, 20, 1);
    assert_eq!(z21.len(), 4);
    assert_eq!(quartic_square_y1(&t, 20, 1), vec![RingElem::int(-1), 1.into()]);
    assert!(search_21_box(&TargetRoots::sqrt_of(&uw()), 3, 2).is_empty());
    let cube = box_search(3, 1, 1, |_| true);
    assert_eq!(cube.len(), 27);
}

#[test]
fn mod4_obstruction() {
    let p = mod4_proof_21(&uw()).unwrap();
    assert!(p.obstructs());
    let reps: Vec<_> = p.residues.iter().map(|&r| residue_repr(r)).collect();
    assert!(reps.contains(&e("w")));
    assert!(reps.contains(&e("-1-w")));
    assert!(!mod4_proof_21(&2.into()).unwrap().obstructs());
}

#[test]
fn fixtures_parse() {
    for name in TableName::ALL {
        let f = parse_fixture(name.fixture()).unwrap();
        assert_eq!(name.as_str().parse::<TableName>().unwrap(), name);
        assert!(f.d == 1 || f.d == 2);
    }
    assert!("nope".parse::<TableName>().is_err());
    assert!(parse_fixture("# d=2, table=x\n(1, 2").is_err());
}
