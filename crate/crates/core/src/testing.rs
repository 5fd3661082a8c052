//! Small graph families shared by unit tests.

use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    Graph::new(n, &pairs).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &pairs).unwrap()
}

/// Hub 0, rim 1..n-1.
pub fn wheel(n: usize) -> Graph {
    let rim = n - 1;
    let mut pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
    pairs.extend((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
    Graph::new(n, &pairs).unwrap()
}

/// Fan triangulation of the n-gon `0..n` with chords from vertex 0.
pub fn fan(n: usize) -> Graph {
    let mut pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    pairs.extend((2..n - 1).map(|i| (0, i)));
    Graph::new(n, &pairs).unwrap()
}

pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(10, &pairs).unwrap()
}
