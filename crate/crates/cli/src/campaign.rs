//! Seeded verification campaigns: each case samples a scaled tuple on the
//! hypothesis boundary, checks the closed-form iterate-order congruence, and
//! cross-checks the Mahler interpolation of the resulting near-identity
//! iterate against direct iteration.
//!
//! Case seeds are derived from `(seed, index)`, so reports are byte-identical
//! for a fixed config regardless of thread count or scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use padorb_core::arc::{self, mahler_coefficients};
use padorb_core::bounds;
use padorb_core::error::{Error, Result};
use padorb_core::sample::{self, ScaledTupleSpec};
use padorb_core::series::verify_order_bound_with_iterate;
use padorb_core::RingParams;

#[derive(Debug, Clone, Serialize)]
pub struct CampaignConfig {
    pub seed: u64,
    pub cases: u64,
    pub p_list: Vec<u64>,
    pub e_list: Vec<u32>,
    pub g_list: Vec<usize>,
    pub precision: u32,
    pub cap: Option<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub index: u64,
    pub p: u64,
    pub e: u32,
    pub g: usize,
    pub precision: u32,
    pub cap: u32,
    pub r: u32,
    pub m: u64,
    pub t: u32,
    pub order_pass: bool,
    pub arc_pass: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub cases: Vec<CaseReport>,
    pub all_pass: bool,
}

fn combos(config: &CampaignConfig) -> Vec<(u64, u32, usize)> {
    let mut out = Vec::new();
    for &p in &config.p_list {
        for &e in &config.e_list {
            for &g in &config.g_list {
                out.push((p, e, g));
            }
        }
    }
    out
}

pub fn validate(config: &CampaignConfig) -> Result<()> {
    if config.p_list.is_empty() || config.e_list.is_empty() || config.g_list.is_empty() {
        return Err(Error::InvalidParameter(
            "p, e, and g lists must be non-empty".into(),
        ));
    }
    if config.g_list.contains(&0) {
        return Err(Error::InvalidParameter("dimensions must be >= 1".into()));
    }
    for &p in &config.p_list {
        for &e in &config.e_list {
            let params = RingParams::new(p, e, config.precision)?;
            if let Some(cap) = config.cap {
                if cap < params.valuation_cap() {
                    return Err(Error::InvalidParameter(format!(
                        "cap {cap} is below e*N = {} for p = {p}, e = {e}",
                        params.valuation_cap()
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Worker count: `PADORB_THREADS` when set, otherwise the available
/// parallelism.
fn thread_cap() -> usize {
    std::env::var("PADORB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn run(config: &CampaignConfig) -> Result<CampaignReport> {
    validate(config)?;
    let combos = combos(config);
    let total = config.cases as usize;
    let results: Vec<Mutex<Option<CaseReport>>> = (0..total).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = thread_cap().min(total.max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= total {
                    break;
                }
                let report = run_case(config, &combos, index as u64);
                *results[index]
                    .lock()
                    .expect("worker poisoned a result slot") = Some(report);
            });
        }
    });
    let cases: Vec<CaseReport> = results
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .expect("result slot poisoned")
                .expect("case not run")
        })
        .collect();
    let all_pass = cases.iter().all(|c| c.pass);
    Ok(CampaignReport {
        config: config.clone(),
        cases,
        all_pass,
    })
}

fn run_case(config: &CampaignConfig, combos: &[(u64, u32, usize)], index: u64) -> CaseReport {
    let (p, e, g) = combos[(index % combos.len() as u64) as usize];
    let params = RingParams::new(p, e, config.precision).expect("validated by run()");
    let cap = config.cap.unwrap_or(params.valuation_cap());
    let r = bounds::r_exponent(p, e);
    let t = bounds::congruence_threshold(p, e);
    let m = u64::try_from(bounds::iterate_order(p, e, g as u32, p)).unwrap_or(u64::MAX);
    let mut report = CaseReport {
        index,
        p,
        e,
        g,
        precision: config.precision,
        cap,
        r,
        m,
        t,
        order_pass: false,
        arc_pass: false,
        pass: false,
        error: None,
    };

    let mut rng = sample::case_rng(config.seed, index);
    let spec = ScaledTupleSpec {
        params,
        vars: g,
        cap,
        identity_residue: false,
    };
    let tuple = sample::random_scaled_tuple(&spec, &mut rng);
    let iterated = match verify_order_bound_with_iterate(tuple.as_series()) {
        Ok((check, iterated)) => {
            report.order_pass = check.pass;
            iterated
        }
        Err(err) => {
            report.error = Some(err.to_string());
            return report;
        }
    };
    if !report.order_pass {
        return report;
    }

    // The m-th iterate is congruent to the identity past the interpolation
    // threshold; its orbit of a random point must match its Mahler expansion.
    let beta: Vec<_> = (0..g)
        .map(|_| sample::random_scalar(params, &mut rng))
        .collect();
    let terms = arc::default_terms(params);
    match mahler_coefficients(&iterated, &beta, terms, 1) {
        Ok(arc) => match arc.matches_direct_iteration(&iterated, 2 * terms as u64) {
            Ok(ok) => report.arc_pass = ok,
            Err(err) => report.error = Some(err.to_string()),
        },
        Err(err) => report.error = Some(err.to_string()),
    }
    report.pass = report.order_pass && report.arc_pass;
    report
}
