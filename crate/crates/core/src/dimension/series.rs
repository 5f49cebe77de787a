//! Compensated summation for the truncated dimension series.

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum
    }
}

pub(crate) fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut k = Kahan::default();
    for v in values {
        k.add(v);
    }
    k.total()
}

/// `Σ c·x^L` over `(L, c)` terms.
pub(crate) fn power_series(terms: &[(usize, f64)], x: f64) -> f64 {
    kahan_sum(terms.iter().map(|&(l, c)| c * x.powi(l as i32)))
}
