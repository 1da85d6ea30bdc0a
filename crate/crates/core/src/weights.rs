//! Grünwald–Letnikov binomial weights.

/// Weights `w_j = (-1)^j * binom(order, j)` for `j = 0..=count`.
///
/// Built from the multiplicative recurrence
/// `w_0 = 1`, `w_j = w_{j-1} * (1 - (order + 1) / j)`, which never forms a
/// factorial and so stays finite for long histories.
#[derive(Debug, Clone, PartialEq)]
pub struct GlWeights {
    order: f64,
    weights: Vec<f64>,
}

impl GlWeights {
    pub fn new(order: f64, count: usize) -> Self {
        let mut weights = Vec::with_capacity(count + 1);
        weights.push(1.0);
        let shifted = order + 1.0;
        for j in 1..=count {
            let prev = weights[j - 1];
            let j = j as f64;
            weights.push(prev * (j - shifted) / j);
        }
        Self { order, weights }
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Highest index stored.
    pub fn count(&self) -> usize {
        self.weights.len() - 1
    }
}

impl std::ops::Index<usize> for GlWeights {
    type Output = f64;

    fn index(&self, j: usize) -> &f64 {
        &self.weights[j]
    }
}

/// Shorthand for [`GlWeights::new`].
pub fn gl_weights(order: f64, count: usize) -> GlWeights {
    GlWeights::new(order, count)
}
