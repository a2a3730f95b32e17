use crate::dynamics::{BitState, Strategy};
use crate::error::{Error, Result};

/// `S^k = k` when `k <= N` and cell `k` of the cover is set, `S^k = 1`
/// otherwise, for `k = 1..=n_iter`.
///
/// The condition reads the initial cover bits, not the evolving state.
pub fn cids_strategy(cover_lscs: &BitState, n_iter: usize) -> Result<Strategy> {
    if n_iter == 0 {
        return Err(Error::InvalidArgument("n_iter must be at least 1".into()));
    }
    let n = cover_lscs.n_cells();
    let terms: Vec<u32> = (1..=n_iter)
        .map(|k| {
            if k <= n && cover_lscs.bit(k - 1) {
                k as u32
            } else {
                1
            }
        })
        .collect();
    Strategy::finite(n, terms)
}
