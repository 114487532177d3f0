//! Graphviz rendering of a subgroup lattice as its Hasse diagram.

use crate::subgroup::Subgroup;

/// Covering relations of the lattice: edges (a, b) with a < b and nothing
/// properly between.  Indices refer to positions in the input slice, which
/// is expected sorted ascending by order (the enumeration's output order).
pub fn hasse_edges(subgroups: &[Subgroup]) -> Vec<(usize, usize)> {
    let n = subgroups.len();
    let mut below = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            if a != b
                && subgroups[a].order() < subgroups[b].order()
                && subgroups[a].is_subgroup_of(&subgroups[b])
            {
                below[b].push(a);
            }
        }
    }
    let mut edges = Vec::new();
    for (b, under) in below.iter().enumerate() {
        for &a in under {
            // a is covered by b unless some c sits strictly between.
            let blocked = under
                .iter()
                .any(|&c| c != a && subgroups[a].is_subgroup_of(&subgroups[c]));
            if !blocked {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Renders the Hasse diagram in DOT format, one rank per subgroup order.
/// Node labels carry the order and the canonical generators.
pub fn render_dot(subgroups: &[Subgroup], graph_name: &str) -> String {
    let mut s = String::new();
    s.push_str(&format!("digraph {graph_name} {{\n"));
    s.push_str("  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, h) in subgroups.iter().enumerate() {
        let gens: Vec<String> = h.generators().iter().map(|e| format!("({e})")).collect();
        let label = if gens.is_empty() {
            format!("#{} |{}| = {}", i, "1", h.order())
        } else {
            format!("#{i} order {}\\n{}", h.order(), gens.join(" "))
        };
        s.push_str(&format!("  s{i} [label=\"{label}\"];\n"));
    }
    // Same-order subgroups share a rank so the drawing is layered.
    let mut orders: Vec<u64> = subgroups.iter().map(|h| h.order()).collect();
    orders.sort_unstable();
    orders.dedup();
    for ord in orders {
        let ids: Vec<String> = subgroups
            .iter()
            .enumerate()
            .filter(|(_, h)| h.order() == ord)
            .map(|(i, _)| format!("s{i}"))
            .collect();
        if ids.len() > 1 {
            s.push_str(&format!("  {{ rank=same; {}; }}\n", ids.join("; ")));
        }
    }
    for (a, b) in hasse_edges(subgroups) {
        s.push_str(&format!("  s{a} -> s{b};\n"));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{all_subgroups, EnumerationCaps};
    use crate::params::GroupParams;

    #[test]
    fn hasse_of_the_eight_element_group() {
        let g = GroupParams::new(2, 1).unwrap();
        let subs = all_subgroups(g, &EnumerationCaps::default()).unwrap();
        let edges = hasse_edges(&subs);
        // Ten subgroups; every edge joins orders differing by a factor of 2
        // (covers in a p-group lattice always have prime index).
        for &(a, b) in &edges {
            assert_eq!(subs[b].order() / subs[a].order(), 2);
            assert!(subs[a].is_subgroup_of(&subs[b]));
        }
        // The trivial subgroup is covered only by the order-2 subgroups.
        let from_trivial: Vec<usize> = edges
            .iter()
            .filter(|&&(a, _)| a == 0)
            .map(|&(_, b)| b)
            .collect();
        assert!(from_trivial.iter().all(|&b| subs[b].order() == 2));
        // No edge skips a layer, and transitive edges are absent: the
        // order-8 top is reached only from order-4 subgroups.
        let into_top: Vec<usize> = edges
            .iter()
            .filter(|&&(_, b)| subs[b].order() == 8)
            .map(|&(a, _)| a)
            .collect();
        assert!(!into_top.is_empty());
        assert!(into_top.iter().all(|&a| subs[a].order() == 4));
    }

    #[test]
    fn dot_output_shape() {
        let g = GroupParams::new(2, 1).unwrap();
        let subs = all_subgroups(g, &EnumerationCaps::default()).unwrap();
        let dot = render_dot(&subs, "lattice_2_1");
        assert!(dot.starts_with("digraph lattice_2_1 {"));
        assert!(dot.contains("s0 ["));
        assert!(dot.contains(" -> "));
        assert!(dot.trim_end().ends_with('}'));
        assert_eq!(dot.matches(" -> ").count(), hasse_edges(&subs).len());
    }
}
