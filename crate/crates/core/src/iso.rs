//! Isomorphism testing by color refinement with individualization, and an
//! isomorphism-invariant fingerprint for bucketing.

use crate::graph::{Graph, Vertex};

/// Refines `colors` to the coarsest equitable partition below it. New color
/// ids are ranks of `(old color, sorted neighbor colors)` signatures, so
/// isomorphic inputs get identical colorings up to the isomorphism. Each
/// round's sorted signature list is appended to `trace` when given.
fn refine(g: &Graph, colors: &mut [usize], mut trace: Option<&mut Vec<usize>>) {
    let n = g.n();
    let mut classes = count_classes(colors);
    loop {
        let mut sigs: Vec<(Vec<usize>, Vertex)> = (0..n)
            .map(|v| {
                let mut s = Vec::with_capacity(g.degree(v) + 1);
                s.push(colors[v]);
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                nb.sort_unstable();
                s.extend(nb);
                (s, v)
            })
            .collect();
        sigs.sort();
        let mut rank = 0;
        for i in 0..sigs.len() {
            if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                rank += 1;
            }
            colors[sigs[i].1] = rank;
        }
        if let Some(t) = trace.as_deref_mut() {
            for (s, _) in &sigs {
                t.push(s.len());
                t.extend(s);
            }
            t.push(usize::MAX);
        }
        let now = if n == 0 { 0 } else { rank + 1 };
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// An isomorphism invariant: equal for isomorphic graphs, and in practice
/// distinct for most non-isomorphic small graphs.
pub fn fingerprint(g: &Graph) -> Vec<usize> {
    let mut colors = vec![0; g.n()];
    let mut trace = vec![g.n(), g.edge_count()];
    refine(g, &mut colors, Some(&mut trace));
    trace
}

/// An isomorphism `g -> h` as `map[v_g] = v_h`, if one exists.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<Vertex>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.n();
    let mut cg = vec![0; n];
    let mut ch = vec![0; n];
    refine(g, &mut cg, None);
    refine(h, &mut ch, None);
    search(g, h, cg, ch)
}

fn histogram(c: &[usize]) -> Vec<usize> {
    let mut s = c.to_vec();
    s.sort_unstable();
    s
}

fn search(g: &Graph, h: &Graph, cg: Vec<usize>, ch: Vec<usize>) -> Option<Vec<Vertex>> {
    if histogram(&cg) != histogram(&ch) {
        return None;
    }
    let n = g.n();
    let mut size = vec![0usize; n + 1];
    for &c in &cg {
        size[c] += 1;
    }
    // first vertex of g in the smallest-id color class that is not a singleton
    let target = (0..n).filter(|&v| size[cg[v]] > 1).min_by_key(|&v| (cg[v], v));
    let Some(v) = target else {
        let mut by_color = vec![0; n];
        for w in 0..n {
            by_color[ch[w]] = w;
        }
        let map: Vec<Vertex> = (0..n).map(|u| by_color[cg[u]]).collect();
        return g.edges().all(|(a, b)| h.has_edge(map[a], map[b])).then_some(map);
    };
    let fresh = n;
    for w in (0..n).filter(|&w| ch[w] == cg[v]) {
        let mut cg2 = cg.clone();
        let mut ch2 = ch.clone();
        cg2[v] = fresh;
        ch2[w] = fresh;
        refine(g, &mut cg2, None);
        refine(h, &mut ch2, None);
        if let Some(m) = search(g, h, cg2, ch2) {
            return Some(m);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    fn check(g: &Graph, h: &Graph) -> bool {
        match are_isomorphic(g, h) {
            Some(m) => {
                let mut seen = m.clone();
                seen.sort_unstable();
                assert_eq!(seen, (0..g.n()).collect::<Vec<_>>());
                assert!(g.edges().all(|(a, b)| h.has_edge(m[a], m[b])));
                true
            }
            None => false,
        }
    }

    #[test]
    fn complement_of_c5_is_c5() {
        assert!(check(&cycle(5).complement(), &cycle(5)));
    }

    #[test]
    fn regular_non_isomorphic() {
        // C6 and two triangles share degree sequence and refinement
        let two_triangles = complete(3).disjoint_union(&complete(3));
        assert_eq!(fingerprint(&cycle(6)), fingerprint(&two_triangles));
        assert!(!check(&cycle(6), &two_triangles));
    }

    #[test]
    fn permutations_are_found() {
        let p = petersen();
        let perm = [3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        assert!(check(&p, &p.permuted(&perm)));
        assert!(check(&grotzsch(), &grotzsch().permuted(&[10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0])));
        assert!(!check(&p, &kneser(5, 2).unwrap().complement()));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn random_relabeling_is_isomorphic(n in 1usize..10, seed in any::<u64>(), p in 0.0f64..1.0) {
                let g = gnp(n, p, seed).unwrap();
                let mut perm: Vec<usize> = (0..n).collect();
                let mut x = seed;
                for i in (1..n).rev() {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    perm.swap(i, (x >> 33) as usize % (i + 1));
                }
                let h = g.permuted(&perm);
                prop_assert_eq!(fingerprint(&g), fingerprint(&h));
                prop_assert!(check(&g, &h));
            }
        }
    }
}
