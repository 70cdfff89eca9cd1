//! Shared fixtures for the kernel benchmarks.

use padorb_core::dynamics::PolySelfMap;
use padorb_core::poly::IntPoly;
use padorb_core::sample::{self, ScaledTupleSpec};
use padorb_core::series::ScaledSeriesTuple;
use padorb_core::RingParams;

/// The heaviest shape the verification campaign exercises: two variables at
/// p = 5, e = 2, N = 6, cap 12.
pub fn campaign_tuple() -> ScaledSeriesTuple {
    let params = RingParams::new(5, 2, 6).unwrap();
    let spec = ScaledTupleSpec {
        params,
        vars: 2,
        cap: params.valuation_cap(),
        identity_residue: false,
    };
    sample::random_scaled_tuple(&spec, &mut sample::case_rng(0xBE, 0))
}

pub fn henon(p: u64, k: u32) -> PolySelfMap {
    let f0 = IntPoly::from_terms(2, &[(1, &[0, 1])]);
    let f1 = IntPoly::from_terms(2, &[(1, &[1, 0]), (1, &[0, 2]), (1, &[0, 0])]);
    PolySelfMap::new(p, k, vec![f0, f1], None).unwrap()
}

pub fn disk_model() -> (PolySelfMap, RingParams) {
    let map = sample::random_disk_model_map(5, 2, &mut sample::case_rng(0xBE, 1));
    (map, RingParams::new(5, 1, 6).unwrap())
}
