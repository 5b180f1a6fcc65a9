//! Shared worker pool. Mode recursion is deep, so workers get large stacks.

use std::sync::OnceLock;

use rayon::{ThreadPool, ThreadPoolBuilder};

/// Caps the number of worker threads when set to a positive integer.
pub const WORKERS_ENV: &str = "ANBIMOD_WORKERS";

const STACK_BYTES: usize = 256 << 20;

pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

pub fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        ThreadPoolBuilder::new()
            .num_threads(worker_count())
            .stack_size(STACK_BYTES)
            .thread_name(|i| format!("anbimod-{i}"))
            .build()
            .expect("worker pool")
    })
}
