use grinberg_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest order [`enumerate_labeled_graphs`] accepts.
pub const LABELED_MAX_N: usize = 7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("edge probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("need at least one vertex")]
    NoVertices,
    #[error("labeled enumeration supports n <= {max}, got {n}")]
    NTooLarge { n: usize, max: usize },
}

/// Erdős–Rényi `G(n, p)`. A ChaCha8 stream seeded with `seed` draws one
/// Bernoulli(`p`) per unordered pair, pairs taken in lexicographic order.
pub fn generate_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    if n == 0 {
        return Err(GenerateError::NoVertices);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GenerateError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    Ok(Graph::new(n, &pairs).expect("pairs are distinct and in range"))
}

/// Every labeled graph on `n` vertices, in order of the edge mask whose bit
/// `k` selects the `k`-th pair in lexicographic order.
pub fn enumerate_labeled_graphs(
    n: usize,
    connected_only: bool,
) -> Result<impl Iterator<Item = Graph>, GenerateError> {
    if n > LABELED_MAX_N {
        return Err(GenerateError::NTooLarge {
            n,
            max: LABELED_MAX_N,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let masks = 0u64..1 << pairs.len();
    Ok(masks.filter_map(move |mask| {
        let chosen: Vec<_> = (0..pairs.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| pairs[k])
            .collect();
        let g = Graph::new(n, &chosen).expect("valid");
        (!connected_only || g.is_connected()).then_some(g)
    }))
}

/// The polygon `0..n` cut by random non-crossing chords, with its faces as
/// vertex walks. Each face of more than three sides is kept whole with
/// probability `keep`.
pub fn dissected_polygon(n: usize, keep: f64, seed: u64) -> (Graph, Vec<Vec<usize>>) {
    assert!(n >= 3, "polygon needs three vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut faces = Vec::new();
    let mut stack = vec![(0..n).collect::<Vec<_>>()];
    while let Some(poly) = stack.pop() {
        let k = poly.len();
        if k == 3 || rng.gen_bool(keep) {
            faces.push(poly);
            continue;
        }
        let i = rng.gen_range(0..k);
        let j = (i + rng.gen_range(2..k - 1)) % k;
        let (a, b) = (i.min(j), i.max(j));
        pairs.push((poly[a], poly[b]));
        let mut rest = poly[b..].to_vec();
        rest.extend_from_slice(&poly[..=a]);
        stack.push(rest);
        stack.push(poly[a..=b].to_vec());
    }
    (Graph::new(n, &pairs).expect("chords are distinct"), faces)
}
