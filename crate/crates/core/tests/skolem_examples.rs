use num_bigint::BigInt;
use pcflab::ring::{RingElem, Valuation};
use pcflab::skolem::*;

fn e(s: &str) -> RingElem {
    RingElem::parse(s, 2).unwrap()
}

#[test]
fn rst_values() {
    assert_eq!(rst(0).unwrap(), (1.into(), 0.into(), 1.into()));
    assert_eq!(rst(1).unwrap(), (e("-4-4*w"), e("4+2*w"), e("4+2*w")));
    assert_eq!(rst(2).unwrap(), (e("104+72*w"), e("-64-48*w"), e("-56-40*w")));
    assert_eq!(rst(6).unwrap().2, e("-9593344-6783488*w"));
    let table = format_rst_table(6).unwrap();
    assert!(table.contains("17323520+12249600*w"));
}

#[test]
fn rst_satisfies_its_definition() {
    let u = RingElem::u();
    for n in 0..12 {
        let (r, s, t) = rst(n).unwrap();
        assert_eq!(t, &r + &(&u * &s));
    }
}

#[test]
fn z_values() {
    assert_eq!(z_of_j(0).unwrap(), RingElem::one());
    assert_eq!(z_of_j(1).unwrap(), e("-3-2*w"));
    assert_eq!(z_of_j(-1).unwrap(), e("13+10*w"));
    assert_eq!(z_of_j(2).unwrap(), e("-63-44*w"));
    assert_eq!(nz(0).unwrap(), BigInt::from(1));
    assert_eq!(nz(1).unwrap(), BigInt::from(1));
    assert_eq!(nz(-1).unwrap(), BigInt::from(-31));
    assert_eq!(nz(2).unwrap(), BigInt::from(97));
}

#[test]
fn aprime_table() {
    let rows = aprime_z_table(&APRIME_KS).unwrap();
    let a: Vec<_> = rows.iter().map(|r| r.aprime.clone()).collect();
    assert_eq!(a, ["1+w", "5+3*w", "21+15*w", "97+69*w", "449+317*w"].map(e).to_vec());
    let n: Vec<_> = rows.iter().map(|r| r.nz.clone()).collect();
    assert_eq!(n, [1, 1, -31, 97, 289].map(BigInt::from).to_vec());
    assert_eq!(rows[1].ks, (2, -1));
    assert!(format_aprime_table(&rows).contains("±(449+317*w)"));
}

#[test]
fn galois_pairs_k_with_one_minus_k() {
    let ctx = SkolemContext::l1().unwrap();
    for k in -10..=10 {
        assert_eq!(ctx.orbit(1 - k).unwrap(), -ctx.orbit(k).unwrap().conj(), "k = {k}");
        let z = ctx.v_coeff(k).unwrap();
        let z2 = ctx.v_coeff(1 - k).unwrap();
        assert_eq!(z.norm(), z2.norm());
    }
}

#[test]
fn orbit_norm_is_constant() {
    let ctx = SkolemContext::l1().unwrap();
    let wu = RingElem::w() * RingElem::u();
    for k in -30..=30 {
        assert_eq!(ctx.orbit(k).unwrap().norm(), wu, "k = {k}");
    }
}

#[test]
fn addax_holds() {
    let rows = addax_check(16).unwrap();
    assert_eq!(rows.len(), 17);
    for r in &rows {
        assert!(r.holds(), "n = {}", r.n);
        assert_eq!(r.val_t, r.bound(), "n = {}", r.n);
        assert_ne!(r.val_r, Valuation::Infinite);
    }
}

#[test]
fn oryx_holds() {
    let rep = oryx_check(30).unwrap();
    assert!(rep.passes());
    assert_eq!(rep.pairs_checked, 900);
    assert!(rep.violations.is_empty());
    assert_eq!(rep.unit_norm_js, vec![0, 1]);
}

#[test]
fn unit_norm_scans() {
    assert_eq!(l1_unit_norm_ks(30).unwrap(), vec![-1, 0, 1, 2]);
    assert_eq!(l2_scan(20).unwrap(), vec![0, 1]);
    assert!(SkolemContext::l2().is_ok());
}

#[test]
fn predicted_matches_observed() {
    let p = predicted_b_norm_minus_one(30).unwrap();
    let o = observed_b_norm_minus_one(20).unwrap();
    assert_eq!(p, o);
    assert_eq!(o, ["-1-w", "1+w", "-7+5*w", "-41-29*w"].map(e).into_iter().collect());
}
