//! On-disk cache of reduced bases, keyed by a hash of (ideal, order).

use super::buchberger::GroebnerBasis;
use super::order::MonomialOrder;
use crate::exactalg::Ideal;
use std::path::Path;

fn path(dir: &Path, ideal: &Ideal, order: &MonomialOrder) -> std::path::PathBuf {
    dir.join(format!("{}.gb", ideal.cache_key(order)))
}

pub(crate) fn load(dir: &Path, ideal: &Ideal, order: &MonomialOrder) -> Option<GroebnerBasis> {
    let text = std::fs::read_to_string(path(dir, ideal, order)).ok()?;
    let mut lines = text.lines();
    let header = lines.next()?;
    if header != format!("# order {}", order.tag()) {
        return None;
    }
    let basis = Ideal::from_file_string(&lines.collect::<Vec<_>>().join("\n")).ok()?;
    if basis.nvars() != ideal.nvars() {
        return None;
    }
    Some(GroebnerBasis::from_parts(ideal.nvars(), *order, basis.gens().to_vec()))
}

/// Best effort: a failed write only costs a recomputation later.
pub(crate) fn store(dir: &Path, ideal: &Ideal, gb: &GroebnerBasis) {
    let order = gb.order();
    let text = format!("# order {}\n{}", order.tag(), gb.to_ideal().to_file_string(&[]));
    if std::fs::create_dir_all(dir).is_ok() {
        let target = path(dir, ideal, &order);
        let tmp = target.with_extension("tmp");
        if std::fs::write(&tmp, text).is_ok() {
            let _ = std::fs::rename(tmp, target);
        }
    }
}
