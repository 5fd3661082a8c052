use grinberg_core::Graph;
use thiserror::Error;

/// Names accepted by [`named_graph`]; `(n)` marks a size parameter.
pub const CATALOG: &[&str] = &[
    "k4", "k5", "cycle(n)", "wheel(n)", "fan(n)", "petersen", "herschel", "tutte",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error(
        "unknown graph {0:?}; known: k4, k5, cycle(n), wheel(n), fan(n), petersen, herschel, tutte"
    )]
    UnknownName(String),
    #[error("{name} needs n >= {min}, got {n}")]
    TooSmall {
        name: &'static str,
        min: usize,
        n: usize,
    },
}

const HERSCHEL: &[(usize, usize)] = &[
    (0, 1),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 5),
    (1, 6),
    (2, 3),
    (2, 7),
    (3, 8),
    (3, 9),
    (4, 5),
    (4, 9),
    (5, 10),
    (6, 7),
    (6, 10),
    (7, 8),
    (8, 10),
    (9, 10),
];

const TUTTE: &[(usize, usize)] = &[
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 4),
    (1, 26),
    (2, 10),
    (2, 11),
    (3, 18),
    (3, 19),
    (4, 5),
    (4, 33),
    (5, 6),
    (5, 29),
    (6, 7),
    (6, 27),
    (7, 8),
    (7, 14),
    (8, 9),
    (8, 38),
    (9, 10),
    (9, 37),
    (10, 39),
    (11, 12),
    (11, 39),
    (12, 13),
    (12, 35),
    (13, 14),
    (13, 15),
    (14, 34),
    (15, 16),
    (15, 22),
    (16, 17),
    (16, 44),
    (17, 18),
    (17, 43),
    (18, 45),
    (19, 20),
    (19, 45),
    (20, 21),
    (20, 41),
    (21, 22),
    (21, 23),
    (22, 40),
    (23, 24),
    (23, 27),
    (24, 25),
    (24, 32),
    (25, 26),
    (25, 31),
    (26, 33),
    (27, 28),
    (28, 29),
    (28, 32),
    (29, 30),
    (30, 31),
    (30, 33),
    (31, 32),
    (34, 35),
    (34, 38),
    (35, 36),
    (36, 37),
    (36, 39),
    (37, 38),
    (40, 41),
    (40, 44),
    (41, 42),
    (42, 43),
    (42, 45),
    (43, 44),
];

pub fn complete(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Graph::new(n, &pairs).expect("valid")
}

pub fn cycle(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &pairs).expect("valid")
}

/// Hub 0 joined to the rim `1..n`.
pub fn wheel(n: usize) -> Graph {
    let rim = n - 1;
    let mut pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
    pairs.extend((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
    Graph::new(n, &pairs).expect("valid")
}

/// The polygon `0..n` triangulated by chords from vertex 0.
pub fn fan(n: usize) -> Graph {
    let mut pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    pairs.extend((2..n - 1).map(|i| (0, i)));
    Graph::new(n, &pairs).expect("valid")
}

/// Outer 5-cycle `0..5`, spokes `i - i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(10, &pairs).expect("valid")
}

pub fn herschel() -> Graph {
    Graph::new(11, HERSCHEL).expect("valid")
}

pub fn tutte() -> Graph {
    Graph::new(46, TUTTE).expect("valid")
}

/// Looks up `k4`, `k5`, `petersen`, `herschel`, `tutte`, or a sized family
/// written `cycle(7)`, `wheel(6)`, `fan(8)`.
pub fn named_graph(name: &str) -> Result<Graph, CatalogError> {
    let unknown = || CatalogError::UnknownName(name.to_string());
    let key = name.trim().to_ascii_lowercase();
    match key.as_str() {
        "k4" => return Ok(complete(4)),
        "k5" => return Ok(complete(5)),
        "petersen" => return Ok(petersen()),
        "herschel" => return Ok(herschel()),
        "tutte" => return Ok(tutte()),
        _ => {}
    }
    let (family, rest) = key.split_once('(').ok_or_else(unknown)?;
    let n: usize = rest
        .strip_suffix(')')
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(unknown)?;
    let (family, min, build): (&'static str, usize, fn(usize) -> Graph) = match family.trim() {
        "cycle" => ("cycle", 3, cycle),
        "wheel" => ("wheel", 4, wheel),
        "fan" => ("fan", 4, fan),
        _ => return Err(unknown()),
    };
    if n < min {
        return Err(CatalogError::TooSmall {
            name: family,
            min,
            n,
        });
    }
    Ok(build(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use grinberg_core::decision::oracle_hamiltonian;
    use std::collections::VecDeque;

    fn degrees(g: &Graph) -> Vec<usize> {
        (0..g.n()).map(|v| g.degree(v)).collect()
    }

    fn bipartite(g: &Graph) -> bool {
        let mut side = vec![None; g.n()];
        for s in 0..g.n() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in g.incident(v) {
                    match side[w] {
                        None => {
                            side[w] = Some(!side[v].unwrap());
                            queue.push_back(w);
                        }
                        Some(x) if x == side[v].unwrap() => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    // Shortest cycle length via BFS from every vertex.
    fn girth(g: &Graph) -> Option<usize> {
        let mut best = None::<usize>;
        for s in 0..g.n() {
            let mut dist = vec![usize::MAX; g.n()];
            let mut parent = vec![usize::MAX; g.n()];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in g.incident(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    #[test]
    fn petersen_structure() {
        let g = named_graph("petersen").unwrap();
        assert_eq!((g.n(), g.m()), (10, 15));
        assert!(degrees(&g).iter().all(|&d| d == 3));
        assert_eq!(girth(&g), Some(5));
    }

    #[test]
    fn herschel_structure() {
        let g = named_graph("herschel").unwrap();
        assert_eq!((g.n(), g.m()), (11, 18));
        assert!(bipartite(&g));
        let mut d = degrees(&g);
        d.sort_unstable();
        assert_eq!(d, [3, 3, 3, 3, 3, 3, 3, 3, 4, 4, 4]);
        assert_eq!(oracle_hamiltonian(&g, None), Ok(None));
    }

    #[test]
    fn tutte_structure() {
        let g = named_graph("tutte").unwrap();
        assert_eq!((g.n(), g.m()), (46, 69));
        assert!(degrees(&g).iter().all(|&d| d == 3));
        assert!(g.is_connected());
        assert_eq!(girth(&g), Some(4));
        assert_eq!(oracle_hamiltonian(&g, None), Ok(None));
    }

    #[test]
    fn families() {
        assert_eq!(named_graph("cycle(7)").unwrap().pairs(), cycle(7).pairs());
        assert_eq!(named_graph("cycle(7)").unwrap().m(), 7);
        assert_eq!(named_graph("wheel(5)").unwrap().m(), 8);
        assert_eq!(named_graph("fan(6)").unwrap().m(), 9);
        assert_eq!(named_graph("K4").unwrap().m(), 6);
        assert_eq!(named_graph("k5").unwrap().m(), 10);
        assert_eq!(
            named_graph("cycle(2)"),
            Err(CatalogError::TooSmall {
                name: "cycle",
                min: 3,
                n: 2
            })
        );
        assert!(matches!(
            named_graph("dodecahedron"),
            Err(CatalogError::UnknownName(_))
        ));
        assert!(matches!(
            named_graph("cycle(x)"),
            Err(CatalogError::UnknownName(_))
        ));
    }
}
