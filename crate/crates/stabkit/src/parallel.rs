//! Fixed-size worker fan-out.

use std::ops::Range;

/// Runs `work(shard)` for every shard in `0..jobs` on its own thread and
/// returns the results in shard order.
pub fn shards<T: Send>(jobs: usize, work: impl Fn(usize) -> T + Sync) -> Vec<T> {
    if jobs <= 1 {
        return vec![work(0)];
    }
    std::thread::scope(|s| {
        let work = &work;
        let handles: Vec<_> = (0..jobs).map(|i| s.spawn(move || work(i))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

/// Splits `0..total` into `jobs` contiguous ranges whose lengths differ by
/// at most one.
pub fn split_range(total: u64, jobs: usize) -> Vec<Range<u64>> {
    let jobs = jobs.max(1) as u64;
    let (base, extra) = (total / jobs, total % jobs);
    let mut start = 0;
    (0..jobs)
        .map(|i| {
            let len = base + u64::from(i < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_cover_everything_once() {
        for total in [0u64, 1, 7, 100] {
            for jobs in 1..6 {
                let r = split_range(total, jobs);
                assert_eq!(r.len(), jobs);
                assert_eq!(r[0].start, 0);
                assert_eq!(r[jobs - 1].end, total);
                assert!(r.windows(2).all(|w| w[0].end == w[1].start));
            }
        }
    }

    #[test]
    fn shard_results_keep_order() {
        assert_eq!(shards(4, |i| i * 10), vec![0, 10, 20, 30]);
    }
}
