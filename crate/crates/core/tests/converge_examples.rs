use pcflab::continuant::{Mat2, Projective};
use pcflab::converge::{classify_mobius, dual_verdict, ineq_check, rate, verdict, ConvergeError, DivergeReason, MobiusCase, MobiusOutcome, Verdict};
use pcflab::pcf::{Pcf, Root};
use pcflab::ring::RingElem;

fn pq(s: &str) -> Pcf {
    Pcf::parse(s, 1).unwrap()
}

fn p2(s: &str) -> Pcf {
    Pcf::parse(s, 2).unwrap()
}

#[test]
fn opening_trio() {
    let v = verdict(&p2("[1; 2]")).unwrap();
    assert_eq!(v.value(), Some(&Root::Finite(RingElem::w())));
    assert_eq!(verdict(&pq("[1; -1, 2]")).unwrap().reason(), Some(DivergeReason::Elliptic));
    assert!(verdict(&pq("[1; -2, 2]")).unwrap().converges());
}

#[test]
fn ineq_example_reports_pariah() {
    let v = verdict(&pq("[; 2, -1/2, 1]")).unwrap();
    let Verdict::Diverges { reason, main_limit, pariahs } = v else { panic!("expected divergence") };
    assert_eq!(reason, DivergeReason::Ineq);
    assert_eq!(main_limit, Some(Root::Finite(5.into())));
    assert_eq!(pariahs.len(), 1);
    assert_eq!(pariahs[0].shift, 2);
    assert_eq!(pariahs[0].limit, Projective::Finite(0.into()));
}

#[test]
fn trivial_elliptic() {
    assert_eq!(verdict(&pq("[; 0]")).unwrap().reason(), Some(DivergeReason::Elliptic));
    assert_eq!(verdict(&pq("[; 0, 0]")).unwrap().reason(), Some(DivergeReason::IdentityMultiple));
}

#[test]
fn ineq_check_examples() {
    let q = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| RingElem::frac(a, b)).collect::<Vec<_>>();
    assert!(ineq_check(&q(&[(2, 1), (-1, 2), (1, 1)])).is_some());
    assert_eq!(ineq_check(&q(&[(2, 1)])), None);
    // per = (0, b): M(0, b)₂₁ = 1, M(b, 0)₂₁ = 0 with M₂₂ = 1, never INEQ
    assert_eq!(ineq_check(&q(&[(0, 1), (3, 1)])), None);
}

#[test]
fn dual_converges_to_other_root() {
    let x = pq("[2; -2, 4]");
    let v = verdict(&x).unwrap();
    let dv = dual_verdict(&x).unwrap();
    let (Some(a), Some(b)) = (v.value(), dv.value()) else { panic!("both converge") };
    assert_ne!(a, b);
    let ineq = pq("[; 2, -1/2, 1]");
    assert!(!verdict(&ineq).unwrap().converges());
}

#[test]
fn mobius_examples() {
    let z = Projective::Finite(RingElem::frac(3, 7));
    assert_eq!(classify_mobius(&Mat2::identity(), &z).unwrap(), (MobiusCase::Identity, MobiusOutcome::Fixed(z.clone())));
    let par = Mat2::from_ints([[1, 1], [0, 1]]);
    assert_eq!(classify_mobius(&par, &z).unwrap(), (MobiusCase::Parabolic, MobiusOutcome::ConvergesTo(Root::Infinity)));
    let hyp = Mat2::from_ints([[2, 1], [1, 1]]);
    let (case, out) = classify_mobius(&hyp, &z).unwrap();
    assert_eq!(case, MobiusCase::Attracted);
    let MobiusOutcome::ConvergesTo(beta) = out else { panic!() };
    // fixed points of x ↦ (2x + 1)/(x + 1) are (1 ± √5)/2; β₊ = golden ratio
    assert_eq!(beta.decimal(10).unwrap(), "1.6180339887");
    let ell = Mat2::from_ints([[0, -1], [1, 0]]);
    assert_eq!(classify_mobius(&ell, &z).unwrap().0, MobiusCase::EllipticDiverges);
    assert!(matches!(classify_mobius(&Mat2::from_ints([[2, 0], [0, 1]]), &z), Err(ConvergeError::BadDeterminant(_))));
    let diag = Mat2::from_ints([[-1, 0], [0, 1]]);
    assert_eq!(classify_mobius(&diag, &z).unwrap().0, MobiusCase::EllipticDiverges);
    let rep = Mat2::new(RingElem::u(), 0.into(), 0.into(), RingElem::zw(-1, 1));
    assert_eq!(classify_mobius(&rep, &Projective::Finite(0.into())).unwrap().0, MobiusCase::Repelling);
    assert_eq!(classify_mobius(&rep, &Projective::Infinity).unwrap(), (MobiusCase::Attracted, MobiusOutcome::ConvergesTo(Root::Infinity)));
}

#[test]
fn rates() {
    let r = rate(&p2("[1; 2]")).unwrap();
    assert!((r.convergents_per_digit - 1.306).abs() < 1e-3);
    assert!(r.modulus_decimal.starts_with("2.414213"));
    let rinds_last = p2("[; 681+481*w, 239-169*w, 369+260*w]");
    let r = rate(&rinds_last).unwrap();
    assert!(r.modulus_decimal.starts_with("1.002094"));
    assert!((r.convergents_per_digit - 1651.0).abs() <= 1.0);
    let pot_last = p2("[442+312*w; -298532+211094*w, 884+624*w]");
    let r = rate(&pot_last).unwrap();
    assert!((r.convergents_per_digit - 550.0).abs() <= 1.0);
    assert_eq!(format!("{:.6}", 1.0 / r.modulus), "0.995825");
    assert_eq!(rate(&pq("[1; -2, 2]")), Err(ConvergeError::SubExponential));
    assert_eq!(rate(&pq("[1; -1, 2]")), Err(ConvergeError::NotConvergent));
}

#[test]
fn double_infinity_root_converges_to_infinity() {
    // E upper triangular, not scalar: Quad = 0x² + 0x − E₁₂
    let x = pq("[; 1, 0]");
    let e = pcflab::pcf::e_matrix(&x);
    assert!(e.e21.is_zero() && e.e11 == e.e22 && !e.e12.is_zero());
    let v = verdict(&x).unwrap();
    assert!(matches!(v, Verdict::Converges { value: Root::Infinity, parabolic: true, .. }));
}
