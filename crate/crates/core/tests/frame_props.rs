mod common;

use abkp_core::values::int;
use abkp_core::{least_multiplier, value_group_below, ExtValue, Frame, Poly};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn frame_invariants(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_chain(&mut r, 2);
        for l in w.levels().iter().take(2) {
            let fr = Frame::build(&w, &l.key).unwrap();
            let group = value_group_below(&w, &l.key).unwrap();
            let e = least_multiplier(&ExtValue::Finite(l.value.clone()), group).unwrap();
            prop_assert_eq!(fr.e() as u64, e);
            prop_assert!(fr.h().degree().unwrap_or(0) < fr.n());
            prop_assert_eq!(w.eval(fr.h()), ExtValue::Finite(&l.value * int(e as i64)));
        }
    }

    #[test]
    fn liftings_lie_in_psi_of_the_truncator(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_chain(&mut r, 1);
        let l = &w.levels()[(seed % w.levels().len() as u64) as usize];
        let fr = Frame::build(&w, &l.key).unwrap();
        let base = fr.chain().clone();
        for m in 1..=2 {
            let g = random_residual(&mut r, fr.residue_field(), m, true);
            let f = fr.lift(&g).unwrap();
            let d = f.degree().unwrap();
            let gamma = base.eval(&f).finite().unwrap() + int(1);
            if d > fr.n() {
                let ext = base.augment(&f, &gamma).unwrap();
                let t = ext.truncation(&l.key).unwrap();
                prop_assert!(t.eval(&f) < ext.eval(&f));
                let exp = f.q_expansion(&l.key).unwrap();
                let top = exp.top_index().unwrap();
                prop_assert_eq!(&exp.coeffs[top], &Poly::one());
                prop_assert_eq!(t.support_and_top(&f).unwrap().1, top);
            }
        }
    }
}

#[test]
fn trivial_liftings_show_a_discrepancy_at_their_own_degree() {
    let mut r = rng(5);
    let mut seen = 0;
    while seen < 20 {
        let w = random_chain(&mut r, 1);
        let l = w.top().clone();
        let fr = Frame::build(&w, &l.key).unwrap();
        if fr.e() != 1 {
            continue;
        }
        let g = random_residual(&mut r, fr.residue_field(), 1, false);
        let f = fr.lift(&g).unwrap();
        assert!(fr.is_trivial_lifting(&f).unwrap());
        assert_eq!(f.degree(), l.key.degree());
        // A trivial lifting is the truncator shifted by a term of the same value.
        let t = fr.chain().truncation(&l.key).unwrap();
        assert_eq!(t.eval(&f), ExtValue::Finite(l.value.clone()));
        seen += 1;
    }
}
