//! Thread pools for the census and the Ramsey sweep.
//!
//! Workers pull task indices from a shared counter and write results into
//! per-task slots, so the merged output does not depend on scheduling.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use chm_core::census::{Alphabet, CensusOptions, CensusPlan, CensusReport};
use chm_core::groupmap::{coloring_count, ramsey_range, RamseyVerdict};
use chm_core::Result;

/// `CHM_THREADS` if set to a positive integer, else the available cores.
pub fn thread_count() -> usize {
    std::env::var("CHM_THREADS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn run_indexed<T: Send>(tasks: usize, threads: usize, work: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<T>>> = (0..tasks).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..threads.clamp(1, tasks.max(1)) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= tasks {
                    break;
                }
                let r = work(k);
                *slots[k].lock().expect("no worker panics while holding a slot") = Some(r);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("slot lock").expect("every task ran")).collect()
}

/// The census split by two-row prefixes across `threads` workers.
pub fn census(alphabet: &Alphabet, options: CensusOptions, threads: usize) -> Result<CensusReport> {
    let plan = CensusPlan::new(alphabet, options)?;
    let tasks = plan.tasks();
    let spent = AtomicU64::new(0);
    let results = run_indexed(tasks.len(), threads, |k| plan.run_task(tasks[k], &spent));
    Ok(plan.merge(results))
}

/// `ramsey_check` split into equal ranges of colourings. The verdict
/// matches the sequential one: the counterexample is the lowest colouring
/// without a monochromatic triangle and `checked` counts up to it.
pub fn ramsey(n: usize, threads: usize) -> Result<RamseyVerdict> {
    let total = coloring_count(n)?;
    let chunks = (threads as u64 * 8).min(total).max(1);
    let size = total.div_ceil(chunks);
    let lowest = AtomicUsize::new(usize::MAX);
    let parts = run_indexed(chunks as usize, threads, |k| {
        if k > lowest.load(Ordering::Relaxed) {
            return None;
        }
        let lo = k as u64 * size;
        let v = ramsey_range(n, lo..(lo + size).min(total)).expect("n validated above");
        if v.counterexample.is_some() {
            lowest.fetch_min(k, Ordering::Relaxed);
        }
        Some((lo, v))
    });
    for (lo, v) in parts.into_iter().flatten() {
        if v.counterexample.is_some() {
            return Ok(RamseyVerdict { n, checked: lo + v.checked, counterexample: v.counterexample });
        }
    }
    Ok(RamseyVerdict { n, checked: total, counterexample: None })
}
