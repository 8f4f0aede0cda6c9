mod support;

use pcflab::converge::{rate, verdict, Verdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::oracle::*;

#[test]
fn mobius_against_interval_powers() {
    let seen = mobius_suite(0x5eed_0001, 500).unwrap();
    for k in ["Identity", "Parabolic", "Repelling", "EllipticDiverges", "Attracted"] {
        assert!(seen.get(k).copied().unwrap_or(0) > 0, "no {k} cases: {seen:?}");
    }
}

#[test]
fn convergents_against_verdict() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let (mut conv, mut div) = (0, 0);
    for _ in 0..160 {
        let x = random_pcf(&mut rng);
        let v = verdict(&x).unwrap();
        match &v {
            Verdict::Converges { parabolic: true, .. } => continue,
            Verdict::Converges { value, .. } => {
                let r = rate(&x).unwrap();
                if r.digits_per_convergent * (TERMS as f64) < 40.0 {
                    continue;
                }
                let cs = convergents(&x, 1);
                let last = &cs[0];
                assert!(same(last, &root_vec(value, PREC)), "{x}: c_{TERMS} is not near {value}");
                conv += 1;
            }
            Verdict::Diverges { .. } => {
                let tail = convergents(&x, 2 * x.per().len() + 1);
                let spread = tail.windows(2).map(|w| chordal_f64(&w[0], &w[1])).fold(0.0, f64::max);
                assert!(spread > 1e-6, "{x}: {v} but consecutive convergents settle");
                div += 1;
            }
        }
    }
    assert!(conv >= 40 && div >= 5, "too few cases: {conv} convergent, {div} divergent");
}
