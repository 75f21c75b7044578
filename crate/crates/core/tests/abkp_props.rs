mod common;

use abkp_core::values::{int, rat};
use abkp_core::{
    distinguished_pair_root_oracle, is_distinguished_pair, psi_member, saturated_chain, ValuationChain,
};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn later_keys_dominate_earlier_truncations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_chain(&mut r, 2);
        let ls = w.levels();
        for i in 0..ls.len() {
            for j in i + 1..ls.len() {
                prop_assert!(w.epsilon(&ls[i].key).unwrap() < w.epsilon(&ls[j].key).unwrap());
                let t = w.truncation(&ls[i].key).unwrap();
                prop_assert!(t.eval(&ls[j].key) < w.eval(&ls[j].key));
            }
        }
    }

    #[test]
    fn chain_links_are_psi_members_with_monic_expansions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_chain(&mut r, 2);
        for pair in w.levels().windows(2) {
            let (q, f) = (&pair[0].key, &pair[1].key);
            prop_assert!(psi_member(&w, q, f).unwrap().member);
            let exp = f.q_expansion(q).unwrap();
            let d = exp.top_index().unwrap();
            prop_assert_eq!(&exp.coeffs[d], &abkp_core::Poly::one());
            prop_assert_eq!(w.truncation(q).unwrap().support_and_top(f).unwrap().1, d);
        }
        let cert = saturated_chain(&w);
        prop_assert_eq!(cert.is_ok(), w.depth() >= 1);
    }

    #[test]
    fn ramified_quadratics_agree_with_the_root_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = [2u64, 3, 5][(seed % 3) as usize];
        let (f, c, s) = ramified_quadratic(&mut r, p);
        let q = abkp_core::Poly::linear(c.clone());
        let w = ValuationChain::new(p, vec![(q.clone(), rat(s as i64, 2)), (f.clone(), int(s as i64 + 1))]).unwrap();
        let ours = is_distinguished_pair(&w, &f, &q).unwrap();
        let oracle = distinguished_pair_root_oracle(&f, &q, p, &linear_catalog(p)).unwrap();
        prop_assert_eq!(oracle.verdict.as_bool(), Some(ours));
    }
}

#[test]
fn equal_epsilon_keys_have_equal_truncations() {
    let w = ValuationChain::new(3, vec![(poly("X"), int(0))]).unwrap();
    let (a, b) = (poly("X"), poly("X+3"));
    assert_eq!(w.epsilon(&a).unwrap(), w.epsilon(&b).unwrap());
    let (ta, tb) = (w.truncation(&a).unwrap(), w.truncation(&b).unwrap());
    let mut r = rng(7);
    for _ in 0..200 {
        let f = random_poly(&mut r, 3, 6);
        assert_eq!(ta.eval(&f), tb.eval(&f), "{f}");
    }
}

#[test]
fn broken_links_are_not_certified() {
    // X^2+2 gives no discrepancy at X, so it cannot follow X in a chain.
    let w = ValuationChain::new(3, vec![(poly("X"), int(0)), (poly("X^2+1"), rat(1, 2))]).unwrap();
    assert!(!psi_member(&w, &poly("X"), &poly("X^2+2")).unwrap().member);
    assert!(ValuationChain::new(3, vec![(poly("X"), int(0)), (poly("X^2+2"), rat(1, 2))]).is_err());
}
