use gsp4kit::uea::Strategy;
use gsp4kit_bench as w;

#[test]
fn workloads_are_nontrivial_and_agree() {
    assert!(w::pbw_product().num_terms() > 1);
    assert_eq!(w::period(Strategy::Pbw), w::period(Strategy::Rewrite));
    assert!(w::ce_d_sweep() > 0);
    let (f1, _) = w::pullback_scalars();
    assert!(!f1.is_zero());
}
