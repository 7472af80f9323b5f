//! Chunked parallel sweeps with a thread-count-independent result order.
//!
//! Per-source computations (BFS sweeps, Brandes accumulations) are split
//! into a fixed chunk layout and the chunk results are returned in chunk
//! order, so reductions over them are bitwise reproducible no matter how
//! many worker threads ran. `CLIQUESCOPE_THREADS` caps the workers.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

const CHUNKS: usize = 64;

/// Worker-thread budget: available parallelism, capped by the
/// `CLIQUESCOPE_THREADS` environment variable when set.
pub fn worker_threads() -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var("CLIQUESCOPE_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        Some(cap) if cap >= 1 => available.min(cap),
        _ => available,
    }
}

/// Runs `work` over contiguous chunks of `0..n` and returns the per-chunk
/// results in chunk order. The chunk layout depends only on `n`.
pub fn map_chunks<R, F>(n: usize, work: F) -> Vec<R>
where
    R: Send,
    F: Fn(std::ops::Range<usize>) -> R + Sync,
{
    if n == 0 {
        return Vec::new();
    }
    let chunk_size = n.div_ceil(CHUNKS.min(n));
    let ranges: Vec<std::ops::Range<usize>> = (0..n.div_ceil(chunk_size))
        .map(|c| c * chunk_size..((c + 1) * chunk_size).min(n))
        .collect();

    let threads = worker_threads().min(ranges.len());
    if threads <= 1 {
        return ranges.into_iter().map(work).collect();
    }

    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, R)>();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            let tx = tx.clone();
            let next = &next;
            let ranges = &ranges;
            let work = &work;
            scope.spawn(move || loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= ranges.len() {
                    break;
                }
                let result = work(ranges[idx].clone());
                if tx.send((idx, result)).is_err() {
                    break;
                }
            });
        }
    });
    drop(tx);

    let mut slots: Vec<Option<R>> = std::iter::repeat_with(|| None).take(ranges.len()).collect();
    for (idx, result) in rx {
        slots[idx] = Some(result);
    }
    slots
        .into_iter()
        .map(|slot| slot.expect("every chunk reports exactly once"))
        .collect()
}
