use super::LLR_CLAMP;
use crate::gf2::BitMatrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CheckRule {
    /// Exact tanh product rule.
    #[default]
    SumProduct,
    MinSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpaOptions {
    pub max_iter: usize,
    /// Stop as soon as the hard decision has zero syndrome.
    pub early_stop: bool,
    pub rule: CheckRule,
}

impl SpaOptions {
    pub fn new(max_iter: usize) -> Self {
        SpaOptions { max_iter, early_stop: true, rule: CheckRule::SumProduct }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeOutcome {
    pub hard: Vec<u8>,
    pub iterations: usize,
    /// Zero syndrome at the final hard decision. Bits with posterior
    /// exactly 0 (punctured bits no message has reached) count as unknowns
    /// and are filled in by peeling on the other decisions.
    pub converged: bool,
    pub posterior: Vec<f64>,
}

/// Flooding sum-product decoder with scratch buffers for one graph.
/// Edges are stored row by row.
#[derive(Clone, Debug)]
pub struct SpaDecoder {
    n: usize,
    row_start: Vec<usize>,
    edge_var: Vec<usize>,
    edge_row: Vec<usize>,
    /// Edge ids of each variable, concatenated.
    var_edges: Vec<usize>,
    var_start: Vec<usize>,
    v2c: Vec<f64>,
    c2v: Vec<f64>,
    scratch: Vec<f64>,
}

impl SpaDecoder {
    pub fn new(h: &BitMatrix) -> Self {
        let (m, n) = (h.rows(), h.cols());
        let mut row_start = Vec::with_capacity(m + 1);
        let mut edge_var = Vec::with_capacity(h.nnz());
        let mut edge_row = Vec::with_capacity(h.nnz());
        let mut per_var: Vec<Vec<usize>> = vec![Vec::new(); n];
        row_start.push(0);
        for r in 0..m {
            for &c in h.row(r) {
                per_var[c].push(edge_var.len());
                edge_var.push(c);
                edge_row.push(r);
            }
            row_start.push(edge_var.len());
        }
        let mut var_start = Vec::with_capacity(n + 1);
        let mut var_edges = Vec::with_capacity(h.nnz());
        var_start.push(0);
        for list in per_var {
            var_edges.extend(list);
            var_start.push(var_edges.len());
        }
        let e = edge_var.len();
        SpaDecoder {
            n,
            row_start,
            edge_var,
            edge_row,
            var_edges,
            var_start,
            v2c: vec![0.0; e],
            c2v: vec![0.0; e],
            scratch: Vec::new(),
        }
    }

    pub fn decode(&mut self, llr: &[f64], max_iter: usize) -> DecodeOutcome {
        self.decode_with(llr, &SpaOptions::new(max_iter))
    }

    pub fn decode_with(&mut self, llr: &[f64], opts: &SpaOptions) -> DecodeOutcome {
        assert_eq!(llr.len(), self.n, "LLR length must equal N");
        self.c2v.fill(0.0);
        let mut posterior = llr.to_vec();
        let mut hard = vec![0u8; self.n];
        let mut iterations = 0;
        let mut converged = false;
        for _ in 0..opts.max_iter.max(1) {
            iterations += 1;
            self.variable_update(llr);
            self.check_update(opts.rule);
            self.posterior(llr, &mut posterior);
            for (h, &p) in hard.iter_mut().zip(&posterior) {
                *h = u8::from(p < 0.0);
            }
            converged = if posterior.contains(&0.0) {
                self.complete_unknowns(&mut hard, &posterior)
            } else {
                self.syndrome_is_zero(&hard)
            };
            if converged && opts.early_stop {
                break;
            }
        }
        DecodeOutcome { hard, iterations, converged, posterior }
    }

    fn variable_update(&mut self, llr: &[f64]) {
        for v in 0..self.n {
            let edges = &self.var_edges[self.var_start[v]..self.var_start[v + 1]];
            let total: f64 = llr[v] + edges.iter().map(|&e| self.c2v[e]).sum::<f64>();
            for &e in edges {
                self.v2c[e] = total - self.c2v[e];
            }
        }
    }

    fn check_update(&mut self, rule: CheckRule) {
        for r in 0..self.row_start.len() - 1 {
            let (a, b) = (self.row_start[r], self.row_start[r + 1]);
            match rule {
                CheckRule::SumProduct => self.tanh_row(a, b),
                CheckRule::MinSum => self.min_sum_row(a, b),
            }
        }
    }

    /// Forward-backward products of tanh(x/2) exclude each edge without
    /// dividing, so zero inputs (erasures) need no special case.
    fn tanh_row(&mut self, a: usize, b: usize) {
        let d = b - a;
        self.scratch.clear();
        self.scratch.extend(self.v2c[a..b].iter().map(|&x| (x.clamp(-2.0 * LLR_CLAMP, 2.0 * LLR_CLAMP) / 2.0).tanh()));
        // c2v temporarily holds prefix products
        let mut acc = 1.0;
        for i in 0..d {
            self.c2v[a + i] = acc;
            acc *= self.scratch[i];
        }
        let mut acc = 1.0;
        for i in (0..d).rev() {
            let p = self.c2v[a + i] * acc;
            acc *= self.scratch[i];
            self.c2v[a + i] = (2.0 * p.atanh()).clamp(-LLR_CLAMP, LLR_CLAMP);
        }
    }

    fn min_sum_row(&mut self, a: usize, b: usize) {
        let (mut min1, mut min2, mut arg) = (f64::INFINITY, f64::INFINITY, a);
        let mut sign = 1.0;
        for e in a..b {
            let x = self.v2c[e];
            let m = x.abs();
            if x < 0.0 {
                sign = -sign;
            }
            if m < min1 {
                min2 = min1;
                min1 = m;
                arg = e;
            } else if m < min2 {
                min2 = m;
            }
        }
        for e in a..b {
            let mag = if e == arg { min2 } else { min1 };
            let s = if self.v2c[e] < 0.0 { -sign } else { sign };
            self.c2v[e] = (s * mag).clamp(-LLR_CLAMP, LLR_CLAMP);
        }
    }

    fn posterior(&self, llr: &[f64], out: &mut [f64]) {
        for v in 0..self.n {
            let edges = &self.var_edges[self.var_start[v]..self.var_start[v + 1]];
            out[v] = llr[v] + edges.iter().map(|&e| self.c2v[e]).sum::<f64>();
        }
    }

    /// Peels the bits with zero posterior from the decisions on the others
    /// and reports whether the completed word has zero syndrome. `hard` is
    /// only changed on success.
    fn complete_unknowns(&self, hard: &mut [u8], posterior: &[f64]) -> bool {
        let m = self.row_start.len() - 1;
        let mut x = hard.to_vec();
        let mut unknown = vec![0usize; m];
        let mut parity = vec![0u8; m];
        for r in 0..m {
            for &v in &self.edge_var[self.row_start[r]..self.row_start[r + 1]] {
                if posterior[v] == 0.0 {
                    unknown[r] += 1;
                } else {
                    parity[r] ^= x[v];
                }
            }
        }
        let mut open: Vec<bool> = posterior.iter().map(|&p| p == 0.0).collect();
        let mut queue: Vec<usize> = (0..m).filter(|&r| unknown[r] == 1).collect();
        while let Some(r) = queue.pop() {
            if unknown[r] != 1 {
                continue;
            }
            let edges = &self.edge_var[self.row_start[r]..self.row_start[r + 1]];
            let v = *edges.iter().find(|&&v| open[v]).expect("one unknown");
            open[v] = false;
            x[v] = parity[r];
            for &e in &self.var_edges[self.var_start[v]..self.var_start[v + 1]] {
                let row = self.edge_row[e];
                unknown[row] -= 1;
                parity[row] ^= x[v];
                if unknown[row] == 1 {
                    queue.push(row);
                }
            }
        }
        if open.contains(&true) || !self.syndrome_is_zero(&x) {
            return false;
        }
        hard.copy_from_slice(&x);
        true
    }

    fn syndrome_is_zero(&self, x: &[u8]) -> bool {
        (0..self.row_start.len() - 1)
            .all(|r| self.edge_var[self.row_start[r]..self.row_start[r + 1]].iter().fold(0u8, |a, &v| a ^ x[v]) == 0)
    }
}
