use rand::Rng;

use super::{bce_loss, sigmoid, ModelConfig, SentimentError};

/// Weights of one direction of one layer. Gate blocks are stacked `[i, f, g, o]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionWeights {
    pub input_dim: usize,
    pub hidden_dim: usize,
    /// `4H × input_dim`, row-major.
    pub w_ih: Vec<f64>,
    /// `4H × H`, row-major.
    pub w_hh: Vec<f64>,
    /// `4H`.
    pub b: Vec<f64>,
}

impl DirectionWeights {
    pub fn zeros(input_dim: usize, hidden_dim: usize) -> Self {
        let g = 4 * hidden_dim;
        DirectionWeights {
            input_dim,
            hidden_dim,
            w_ih: vec![0.0; g * input_dim],
            w_hh: vec![0.0; g * hidden_dim],
            b: vec![0.0; g],
        }
    }

    fn w_ih_row(&self, r: usize) -> &[f64] {
        &self.w_ih[r * self.input_dim..(r + 1) * self.input_dim]
    }

    fn w_hh_row(&self, r: usize) -> &[f64] {
        &self.w_hh[r * self.hidden_dim..(r + 1) * self.hidden_dim]
    }

    /// Writes activated gates `[σ(i), σ(f), tanh(g), σ(o)]` into `out`.
    fn gates(&self, x: &[f64], h: &[f64], out: &mut [f64]) {
        let hd = self.hidden_dim;
        for (r, z) in out.iter_mut().enumerate() {
            let pre = self.b[r] + dot(self.w_ih_row(r), x) + dot(self.w_hh_row(r), h);
            *z = if (2 * hd..3 * hd).contains(&r) { pre.tanh() } else { sigmoid(pre) };
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LstmLayerWeights {
    pub fwd: DirectionWeights,
    pub bwd: Option<DirectionWeights>,
}

impl LstmLayerWeights {
    pub fn directions(&self) -> impl Iterator<Item = &DirectionWeights> {
        std::iter::once(&self.fwd).chain(self.bwd.as_ref())
    }
}

/// One LSTM step: returns `(h', c')`.
pub fn lstm_cell_forward(
    x: &[f64],
    h: &[f64],
    c: &[f64],
    w: &DirectionWeights,
) -> Result<(Vec<f64>, Vec<f64>), SentimentError> {
    let hd = w.hidden_dim;
    if x.len() != w.input_dim || h.len() != hd || c.len() != hd {
        return Err(SentimentError::Shape(format!(
            "cell expects x[{}], h[{hd}], c[{hd}]; got x[{}], h[{}], c[{}]",
            w.input_dim,
            x.len(),
            h.len(),
            c.len()
        )));
    }
    let mut z = vec![0.0; 4 * hd];
    w.gates(x, h, &mut z);
    let mut h_new = vec![0.0; hd];
    let mut c_new = vec![0.0; hd];
    for j in 0..hd {
        c_new[j] = z[hd + j] * c[j] + z[j] * z[2 * hd + j];
        h_new[j] = z[3 * hd + j] * c_new[j].tanh();
    }
    Ok((h_new, c_new))
}

/// Stacked (optionally bidirectional) LSTM with average pooling and a
/// logistic head. Also used as the container for gradients.
#[derive(Debug, Clone, PartialEq)]
pub struct LstmModel {
    pub config: ModelConfig,
    pub layers: Vec<LstmLayerWeights>,
    /// `1 × output_dim`.
    pub head_w: Vec<f64>,
    pub head_b: f64,
}

/// Activations of one direction, indexed by processing step.
#[derive(Debug, Clone)]
struct DirectionCache {
    reverse: bool,
    gates: Vec<f64>,
    c: Vec<f64>,
    tanh_c: Vec<f64>,
    h: Vec<f64>,
}

impl DirectionCache {
    fn time(&self, step: usize, t_len: usize) -> usize {
        if self.reverse {
            t_len - 1 - step
        } else {
            step
        }
    }
}

/// Everything the backward pass needs from one forward pass.
#[derive(Debug, Clone)]
pub struct ForwardCache {
    pub t_len: usize,
    /// Per-layer inputs; `inputs[0]` is the embedded sequence.
    inputs: Vec<Vec<f64>>,
    /// Final layer's per-step outputs, `T × output_dim`.
    pub outputs: Vec<f64>,
    dirs: Vec<Vec<DirectionCache>>,
    pub pooled: Vec<f64>,
    pub score: f64,
}

impl LstmModel {
    pub fn zeros(config: ModelConfig) -> Result<Self, SentimentError> {
        config.validate()?;
        let layers = (0..config.layers)
            .map(|l| {
                let input = config.layer_input_dim(l);
                LstmLayerWeights {
                    fwd: DirectionWeights::zeros(input, config.hidden_dim),
                    bwd: config.bidirectional.then(|| DirectionWeights::zeros(input, config.hidden_dim)),
                }
            })
            .collect();
        Ok(LstmModel { config, layers, head_w: vec![0.0; config.output_dim()], head_b: 0.0 })
    }

    /// Uniform `(−1/√H, 1/√H)` for every tensor, then `+1` on each forget-gate bias.
    pub fn init<R: Rng>(config: ModelConfig, rng: &mut R) -> Result<Self, SentimentError> {
        let mut model = Self::zeros(config)?;
        let k = 1.0 / (config.hidden_dim as f64).sqrt();
        for (_, data) in model.tensors_mut() {
            for v in data.iter_mut() {
                *v = rng.gen_range(-k..k);
            }
        }
        let hd = config.hidden_dim;
        for layer in &mut model.layers {
            for dir in std::iter::once(&mut layer.fwd).chain(layer.bwd.as_mut()) {
                dir.b[hd..2 * hd].iter_mut().for_each(|b| *b += 1.0);
            }
        }
        Ok(model)
    }

    /// Named tensors with their shapes, in weight-file order.
    pub fn tensors(&self) -> Vec<(String, Vec<usize>, &[f64])> {
        let g = 4 * self.config.hidden_dim;
        let mut out = Vec::new();
        for (l, layer) in self.layers.iter().enumerate() {
            for (name, d) in ["fwd", "bwd"].iter().zip(layer.directions()) {
                out.push((format!("l{l}.{name}.W_ih"), vec![g, d.input_dim], &d.w_ih[..]));
                out.push((format!("l{l}.{name}.W_hh"), vec![g, d.hidden_dim], &d.w_hh[..]));
                out.push((format!("l{l}.{name}.b"), vec![g], &d.b[..]));
            }
        }
        out.push(("head.W".into(), vec![1, self.head_w.len()], &self.head_w[..]));
        out.push(("head.b".into(), vec![1], std::slice::from_ref(&self.head_b)));
        out
    }

    /// Mutable views of the same tensors, same order as [`tensors`](Self::tensors).
    pub fn tensors_mut(&mut self) -> Vec<(String, &mut [f64])> {
        let mut out = Vec::new();
        for (l, layer) in self.layers.iter_mut().enumerate() {
            for (name, d) in ["fwd", "bwd"].iter().zip(std::iter::once(&mut layer.fwd).chain(layer.bwd.as_mut())) {
                out.push((format!("l{l}.{name}.W_ih"), &mut d.w_ih[..]));
                out.push((format!("l{l}.{name}.W_hh"), &mut d.w_hh[..]));
                out.push((format!("l{l}.{name}.b"), &mut d.b[..]));
            }
        }
        out.push(("head.W".into(), &mut self.head_w[..]));
        out.push(("head.b".into(), std::slice::from_mut(&mut self.head_b)));
        out
    }

    pub fn num_parameters(&self) -> usize {
        self.tensors().iter().map(|t| t.2.len()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.tensors().iter().all(|t| t.2.iter().all(|v| v.is_finite()))
    }

    /// Score of a `T × embed_dim` row-major sequence.
    pub fn forward(&self, seq: &[f64]) -> Result<f64, SentimentError> {
        Ok(self.forward_cached(seq)?.score)
    }

    pub fn forward_cached(&self, seq: &[f64]) -> Result<ForwardCache, SentimentError> {
        let e = self.config.embed_dim;
        if seq.is_empty() {
            return Err(SentimentError::Unscorable);
        }
        if seq.len() % e != 0 {
            return Err(SentimentError::Shape(format!("sequence length {} is not a multiple of {e}", seq.len())));
        }
        let t_len = seq.len() / e;
        let hd = self.config.hidden_dim;
        let width = self.config.output_dim();

        let mut inputs = vec![seq.to_vec()];
        let mut dirs = Vec::with_capacity(self.layers.len());
        for layer in &self.layers {
            let input = inputs.last().expect("at least the sequence");
            let caches: Vec<DirectionCache> =
                layer.directions().enumerate().map(|(k, w)| run_direction(w, input, t_len, k == 1)).collect();
            let mut out = vec![0.0; t_len * width];
            for (k, cache) in caches.iter().enumerate() {
                for s in 0..t_len {
                    let t = cache.time(s, t_len);
                    out[t * width + k * hd..t * width + (k + 1) * hd].copy_from_slice(&cache.h[s * hd..(s + 1) * hd]);
                }
            }
            dirs.push(caches);
            inputs.push(out);
        }

        let outputs = inputs.pop().expect("one output per layer");
        let mut pooled = vec![0.0; width];
        for t in 0..t_len {
            for (p, v) in pooled.iter_mut().zip(&outputs[t * width..(t + 1) * width]) {
                *p += v;
            }
        }
        pooled.iter_mut().for_each(|p| *p /= t_len as f64);
        let score = sigmoid(dot(&self.head_w, &pooled) + self.head_b);
        Ok(ForwardCache { t_len, inputs, outputs, dirs, pooled, score })
    }

    /// Adds `scale · ∂BCE/∂θ` for one example to `grads`.
    ///
    /// The loss gradient is taken through the sigmoid analytically
    /// (`∂L/∂logit = s − y`), i.e. ignoring the clamp, which only matters for
    /// saturated scores.
    pub fn backward(&self, cache: &ForwardCache, label: u8, scale: f64, grads: &mut LstmModel) {
        let t_len = cache.t_len;
        let hd = self.config.hidden_dim;
        let width = self.config.output_dim();

        let d_logit = scale * (cache.score - f64::from(label));
        for (g, p) in grads.head_w.iter_mut().zip(&cache.pooled) {
            *g += d_logit * p;
        }
        grads.head_b += d_logit;

        let per_step: Vec<f64> = self.head_w.iter().map(|w| d_logit * w / t_len as f64).collect();
        let mut d_out: Vec<f64> = (0..t_len).flat_map(|_| per_step.iter().copied()).collect();

        for l in (0..self.layers.len()).rev() {
            let input = &cache.inputs[l];
            let in_dim = self.config.layer_input_dim(l);
            let mut d_in = (l > 0).then(|| vec![0.0; t_len * in_dim]);
            let layer = &self.layers[l];
            let glayer = &mut grads.layers[l];
            let gdirs = std::iter::once(&mut glayer.fwd).chain(glayer.bwd.as_mut());
            for (k, ((w, g), dc)) in layer.directions().zip(gdirs).zip(&cache.dirs[l]).enumerate() {
                backprop_direction(w, g, dc, input, &d_out, width, k * hd, d_in.as_deref_mut());
            }
            match d_in {
                Some(d) => d_out = d,
                None => break,
            }
        }
    }

    /// Mean BCE over `batch` and its gradient.
    pub fn batch_gradient(&self, batch: &[(&[f64], u8)]) -> Result<(f64, LstmModel), SentimentError> {
        let mut grads = LstmModel::zeros(self.config)?;
        let scale = 1.0 / batch.len() as f64;
        let mut loss = 0.0;
        for &(seq, label) in batch {
            let cache = self.forward_cached(seq)?;
            loss += bce_loss(cache.score, label);
            self.backward(&cache, label, scale, &mut grads);
        }
        Ok((loss * scale, grads))
    }
}

fn run_direction(w: &DirectionWeights, input: &[f64], t_len: usize, reverse: bool) -> DirectionCache {
    let hd = w.hidden_dim;
    let g4 = 4 * hd;
    let in_dim = w.input_dim;
    let mut cache = DirectionCache {
        reverse,
        gates: vec![0.0; t_len * g4],
        c: vec![0.0; t_len * hd],
        tanh_c: vec![0.0; t_len * hd],
        h: vec![0.0; t_len * hd],
    };
    let mut h_prev = vec![0.0; hd];
    let mut c_prev = vec![0.0; hd];
    for s in 0..t_len {
        let t = cache.time(s, t_len);
        let z = &mut cache.gates[s * g4..(s + 1) * g4];
        w.gates(&input[t * in_dim..(t + 1) * in_dim], &h_prev, z);
        for j in 0..hd {
            let c = z[hd + j] * c_prev[j] + z[j] * z[2 * hd + j];
            let tc = c.tanh();
            let h = z[3 * hd + j] * tc;
            cache.c[s * hd + j] = c;
            cache.tanh_c[s * hd + j] = tc;
            cache.h[s * hd + j] = h;
            c_prev[j] = c;
            h_prev[j] = h;
        }
    }
    cache
}

/// Backpropagation through time for one direction.
///
/// `d_out` holds `∂L/∂output` for the layer (`T × width`); this direction's
/// slice starts at column `offset`. Input gradients are accumulated into
/// `d_in` when given.
#[allow(clippy::too_many_arguments)]
fn backprop_direction(
    w: &DirectionWeights,
    g: &mut DirectionWeights,
    cache: &DirectionCache,
    input: &[f64],
    d_out: &[f64],
    width: usize,
    offset: usize,
    mut d_in: Option<&mut [f64]>,
) {
    let hd = w.hidden_dim;
    let g4 = 4 * hd;
    let in_dim = w.input_dim;
    let t_len = cache.h.len() / hd;
    let zeros = vec![0.0; hd];

    let mut dh_next = vec![0.0; hd];
    let mut dc_next = vec![0.0; hd];
    let mut dz = vec![0.0; g4];
    for s in (0..t_len).rev() {
        let t = cache.time(s, t_len);
        let gates = &cache.gates[s * g4..(s + 1) * g4];
        let tanh_c = &cache.tanh_c[s * hd..(s + 1) * hd];
        let (c_prev, h_prev) = if s > 0 {
            (&cache.c[(s - 1) * hd..s * hd], &cache.h[(s - 1) * hd..s * hd])
        } else {
            (&zeros[..], &zeros[..])
        };

        for j in 0..hd {
            let (i, f, gg, o) = (gates[j], gates[hd + j], gates[2 * hd + j], gates[3 * hd + j]);
            let dh = d_out[t * width + offset + j] + dh_next[j];
            let tc = tanh_c[j];
            let dc = dh * o * (1.0 - tc * tc) + dc_next[j];
            dz[j] = dc * gg * i * (1.0 - i);
            dz[hd + j] = dc * c_prev[j] * f * (1.0 - f);
            dz[2 * hd + j] = dc * i * (1.0 - gg * gg);
            dz[3 * hd + j] = dh * tc * o * (1.0 - o);
            dc_next[j] = dc * f;
        }

        let x = &input[t * in_dim..(t + 1) * in_dim];
        dh_next.iter_mut().for_each(|v| *v = 0.0);
        for (r, &d) in dz.iter().enumerate() {
            if d == 0.0 {
                continue;
            }
            axpy(&mut g.w_ih[r * in_dim..(r + 1) * in_dim], d, x);
            axpy(&mut g.w_hh[r * hd..(r + 1) * hd], d, h_prev);
            g.b[r] += d;
            axpy(&mut dh_next, d, w.w_hh_row(r));
            if let Some(d_in) = d_in.as_deref_mut() {
                axpy(&mut d_in[t * in_dim..(t + 1) * in_dim], d, w.w_ih_row(r));
            }
        }
    }
}

/// Dot product with four independent accumulators so the loop vectorizes.
#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0; 4];
    let ca = a.chunks_exact(4);
    let cb = b.chunks_exact(4);
    let tail: f64 = ca.remainder().iter().zip(cb.remainder()).map(|(x, y)| x * y).sum();
    for (x, y) in ca.zip(cb) {
        for k in 0..4 {
            acc[k] += x[k] * y[k];
        }
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

#[inline]
fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}
