//! Exhaustive checks of window representatives.

mod common;

use common::{patterns, strings};
use matchcost::{Algorithm, Matcher, RepSet};

fn sets(p: &matchcost::Pattern) -> Vec<RepSet> {
    vec![RepSet::substring_closure(p), RepSet::oracle_closure(p)]
}

#[test]
fn delta_tracks_shifted_windows() {
    for sigma in 1..=4 {
        for m in 1..=4 {
            for p in patterns(sigma, m) {
                let mut all = sets(&p);
                all.push(RepSet::compatible(&p, Algorithm::Bm).unwrap());
                for r in &all {
                    for a in strings(sigma, m) {
                        for c in 0..sigma as u8 {
                            let mut shifted = a[1..].to_vec();
                            shifted.push(c);
                            assert_eq!(r.delta(r.rep_of(&a), c), r.rep_of(&shifted));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn windows_sharing_a_representative_share_verdicts() {
    for sigma in 1..=4 {
        for m in 1..=4 {
            for p in patterns(sigma, m) {
                let matcher = Matcher::new(&p);
                for alg in Algorithm::ALL {
                    let reps = RepSet::compatible(&p, alg).unwrap();
                    for w in strings(sigma, m) {
                        let ann = reps.annotation(reps.rep_of(&w));
                        assert_eq!(ann, Some(matcher.verdict(alg, &w).unwrap()), "{alg}");
                    }
                }
            }
        }
    }
}

#[test]
fn base_closures_are_compatible_except_bm_over_four_symbols() {
    let mut bm_conflicts = 0;
    for sigma in 1..=4 {
        for m in 1..=4 {
            for p in patterns(sigma, m) {
                for alg in Algorithm::ALL {
                    let base = if alg == Algorithm::Bom {
                        RepSet::oracle_closure(&p)
                    } else {
                        RepSet::substring_closure(&p)
                    };
                    match base.annotate(alg) {
                        Ok(_) => {}
                        Err(e) => {
                            assert_eq!(alg, Algorithm::Bm, "{e}");
                            assert_eq!(sigma, 4, "{e}");
                            bm_conflicts += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(bm_conflicts > 0);
}

#[test]
fn closure_sizes() {
    for sigma in 1..=3 {
        for m in 1..=6 {
            for p in patterns(sigma, m) {
                let sub = RepSet::substring_closure(&p);
                assert!(sub.len() <= m * (m + 1) / 2 + 1);
                for r in sets(&p) {
                    assert_eq!(r.rep(r.rep_of(p.symbols())), p.symbols());
                    assert!(r.contains(&[]));
                    assert!(sub.reps().all(|s| r.contains(s)));
                }
            }
        }
    }
}
