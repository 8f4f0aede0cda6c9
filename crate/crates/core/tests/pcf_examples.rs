use pcflab::continuant::{cf_matrix, continuant, finite_cf_value, Mat2, Projective};
use pcflab::converge::verdict;
use pcflab::pcf::{dual, e_matrix, e_matrix_from_continuants, extend_type, g_multiplier, quad_poly, roots, Pcf, PcfError, QuadPoly, Root};
use pcflab::ring::RingElem;

fn ints(v: &[i64]) -> Vec<RingElem> {
    v.iter().map(|&x| x.into()).collect()
}

fn p(s: &str) -> Pcf {
    Pcf::parse(s, 2).unwrap()
}

fn pq(s: &str) -> Pcf {
    Pcf::parse(s, 1).unwrap()
}

#[test]
fn continuants() {
    assert_eq!(continuant(&ints(&[1, 2, 3])), 10.into());
    assert_eq!(continuant(&[]), 1.into());
    assert_eq!(continuant(&ints(&[1, 1, 1, 1])), 5.into());
}

#[test]
fn matrices() {
    assert_eq!(cf_matrix(&ints(&[2])), Mat2::from_ints([[2, 1], [1, 0]]));
    let c = RingElem::frac(7, 3);
    let inv = cf_matrix(&[0.into(), -&c, 0.into()]);
    assert_eq!(&cf_matrix(std::slice::from_ref(&c)) * &inv, Mat2::identity());
    assert_eq!(cf_matrix(&ints(&[1, 1, 1])), Mat2::from_ints([[3, 2], [2, 1]]));
}

#[test]
fn finite_values() {
    assert_eq!(finite_cf_value(&ints(&[1, 2])).unwrap(), Projective::Finite(RingElem::frac(3, 2)));
    assert_eq!(finite_cf_value(&ints(&[0])).unwrap(), Projective::Finite(0.into()));
    assert_eq!(finite_cf_value(&[]).unwrap(), Projective::Infinity);
    assert_eq!(finite_cf_value(&ints(&[1, 2, 2])).unwrap(), Projective::Finite(RingElem::frac(7, 5)));
}

#[test]
fn e_matrix_examples() {
    let x = pq("[2; -2, 4]");
    assert_eq!(e_matrix(&x), Mat2::from_ints([[-3, -4], [-2, -3]]));
    assert_eq!(e_matrix(&pq("[; 0]")), Mat2::from_ints([[0, 1], [1, 0]]));
    for s in ["[2; -2, 4]", "[1, 2, 3; 4, 5]", "[1+w; -2, 2+2*w]", "[; 1, 2, 3]", "[w; 2]"] {
        let x = p(s);
        assert_eq!(e_matrix(&x), e_matrix_from_continuants(&x), "{s}");
    }
}

#[test]
fn quad_examples() {
    assert_eq!(quad_poly(&pq("[2; -2, 4]")).unwrap(), QuadPoly::new((-2).into(), 0.into(), 4.into()).unwrap());
    let r = roots(&p("[1; 2]")).unwrap();
    assert!(r.contains(&Root::Finite(RingElem::w())) && r.contains(&Root::Finite(-RingElem::w())));
    let x1 = RingElem::frac(5, 3);
    let q = quad_poly(&Pcf::new(vec![], vec![x1.clone()], 1).unwrap()).unwrap();
    assert_eq!(q, QuadPoly::new(1.into(), -&x1, (-1).into()).unwrap());
    let scalar = Pcf::new(vec![], ints(&[0, 0]), 1).unwrap();
    assert_eq!(quad_poly(&scalar), Err(PcfError::IdentityMultiple));
}

#[test]
fn root_examples() {
    let x = p("[2; -2, 4]");
    let r = roots(&x).unwrap();
    let e = e_matrix(&x);
    let w = RingElem::w();
    assert_eq!(r.first, Root::Finite(w.clone()));
    assert_eq!(&e.e21 * &w + &e.e22, RingElem::zw(-3, -2));
    // [; 2, 2] over Q: E = [[5, 2], [2, 1]], roots 1 ± √2
    let y = pq("[; 2, 2]");
    assert_eq!(e_matrix(&y), Mat2::from_ints([[5, 2], [2, 1]]));
    let ry = roots(&y).unwrap();
    let q = quad_poly(&y).unwrap();
    assert!(q.vanishes_at(&ry.first) && q.vanishes_at(&ry.second));
    assert!(matches!(ry.first, Root::Ext(_)));
    assert_eq!(ry.first.decimal(8).unwrap(), "2.41421356");
}

#[test]
fn dual_examples() {
    assert_eq!(dual(&pq("[2; -2, 4]")), pq("[-2; 2, -4]"));
    for s in ["[2; -2, 4]", "[1, 2; 3]", "[; 1, 2, 3]", "[1+w; -2, 2+2*w]"] {
        let x = p(s);
        assert_eq!(dual(&dual(&x)).normalize(), x.normalize(), "{s}");
        let (_, k) = x.pcf_type();
        let sign = if k % 2 == 0 { RingElem::int(-1) } else { RingElem::one() };
        assert_eq!(quad_poly(&dual(&x)).unwrap(), quad_poly(&x).unwrap().scale(&sign), "{s}");
    }
}

#[test]
fn g_multiplier_examples() {
    let per = ints(&[3, -1, 2]);
    assert_eq!(g_multiplier(&per, 1), RingElem::one());
    assert_eq!(g_multiplier(&ints(&[2]), 2), RingElem::int(2));
    let x = Pcf::new(vec![], per.clone(), 1).unwrap();
    for m in 1..=4u32 {
        let e1 = e_matrix(&x);
        let em = e_matrix(&extend_type(&x, 0, m as usize));
        let g = g_multiplier(&per, m);
        assert_eq!(em.e21, &g * &e1.e21);
        assert_eq!(em.e12, &g * &e1.e12);
        assert_eq!(&em.e22 - &em.e11, &g * &(&e1.e22 - &e1.e11));
    }
}

#[test]
fn extend_type_examples() {
    assert_eq!(extend_type(&pq("[1; 2]"), 1, 1), pq("[1, 2; 2]"));
    let x = pq("[; 1, 1, 0]");
    let y = extend_type(&x, 0, 2);
    assert_eq!(y, pq("[; 1, 1, 0, 1, 1, 0]"));
    let g = g_multiplier(x.per(), 2);
    assert_eq!(quad_poly(&y).unwrap(), quad_poly(&x).unwrap().scale(&g));
    for line in include_str!("../fixtures/pcf_rinds.txt").lines().filter(|l| l.starts_with('[')) {
        let x = p(line);
        for (l, m) in [(1, 1), (0, 2), (2, 3)] {
            let (a, b) = (verdict(&extend_type(&x, l, m)).unwrap(), verdict(&x).unwrap());
            assert!(a.converges() && b.converges(), "{line}");
            assert_eq!(a.value(), b.value(), "{line}");
        }
    }
}

#[test]
fn parse_print_round_trip() {
    for s in ["[1+w; -2, 2+2*w]", "[; 2, -1/2, 1]", "[1; 2]"] {
        let x = p(s);
        assert_eq!(x.to_string(), s);
    }
    assert!(Pcf::parse("[1; ]", 2).is_err());
    assert!(Pcf::parse("1; 2", 2).is_err());
}
