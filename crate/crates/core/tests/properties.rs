use proptest::prelude::*;

use patchwork_lab_core::haas::{build_haas_plan, haas_k, partition_sizes, sign_distribution_from_zones};
use patchwork_lab_core::partitions::{enumerate_partitions, Partition};
use patchwork_lab_core::patchwork::{
    build_patchwork, extract_scheme, newton_triangle_points, random_convex_primitive_triangulation,
    SignDistribution,
};
use patchwork_lab_core::scheme::{harnack_bound, scheme_stats, Node};
use patchwork_lab_core::trees::{branch_cut_decode, branch_cut_encode, count_bounded_depth, LabeledTree};
use patchwork_lab_core::RealScheme;

/// Tree whose vertex `i + 1` hangs below vertex `parents[i] % (i + 1)`.
fn tree_from_parents(parents: &[usize]) -> Node {
    let n = parents.len() + 1;
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &p) in parents.iter().enumerate() {
        kids[p % (i + 1)].push(i + 1);
    }
    fn build(v: usize, kids: &[Vec<usize>]) -> Node {
        Node::with_children(kids[v].iter().map(|&c| build(c, kids)).collect())
    }
    build(0, &kids)
}

fn remove_first_leaf(node: &mut Node) -> bool {
    if let Some(i) = node.children.iter().position(Node::is_leaf) {
        node.children.remove(i);
        return true;
    }
    node.children.iter_mut().any(remove_first_leaf)
}

fn scheme_strategy() -> impl Strategy<Value = RealScheme> {
    (proptest::collection::vec(any::<usize>(), 0..14), any::<bool>())
        .prop_map(|(parents, j)| RealScheme::new(tree_from_parents(&parents), j))
}

proptest! {
    #[test]
    fn scheme_text_round_trip(s in scheme_strategy()) {
        let text = s.to_string();
        let back: RealScheme = text.parse().unwrap();
        prop_assert_eq!(back.canonical(), s.canonical());
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn canonical_is_idempotent(s in scheme_strategy()) {
        let c = s.canonical();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonical(), c.clone());
        prop_assert!(s.is_isotopic(&c));
    }

    #[test]
    fn stats_are_monotone_under_leaf_removal(s in scheme_strategy()) {
        let before = scheme_stats(&s);
        prop_assert!(before.depth <= before.oval_count);
        prop_assert!(before.deep_oval_count <= before.oval_count);
        let mut root = s.root.clone();
        if remove_first_leaf(&mut root) {
            let after = scheme_stats(&RealScheme::new(root, s.pseudoline));
            prop_assert_eq!(after.oval_count + 1, before.oval_count);
            prop_assert!(after.depth <= before.depth);
            prop_assert!(after.deep_oval_count <= before.deep_oval_count);
        }
    }

    #[test]
    fn branch_cut_round_trip(parents in proptest::collection::vec(any::<usize>(), 0..24), h in 2usize..5) {
        let tree = LabeledTree::from_node(&tree_from_parents(&parents));
        let n = tree.vertex_count();
        let rec = branch_cut_encode(&tree, h).unwrap();
        prop_assert_eq!(branch_cut_decode(&rec), tree);
        prop_assert!(rec.cut_count() <= n / h);
        let merged = rec.merged();
        prop_assert_eq!(merged.vertex_count(), n + 1);
        prop_assert!(merged.height() <= h);
    }

    #[test]
    fn bounded_counts_telescope(n in 2usize..40) {
        let mut prev = count_bounded_depth(n, 1);
        prop_assert_eq!(prev.clone(), 1u32.into());
        for h in 2..n {
            let next = count_bounded_depth(n, h);
            prop_assert!(next >= prev);
            prev = next;
        }
        prop_assert_eq!(prev, patchwork_lab_core::trees::count_rooted_trees(n));
    }

    #[test]
    fn partition_text_round_trip(parts in proptest::collection::vec(0u32..9, 0..8)) {
        let p = Partition::from_unsorted(parts.clone());
        prop_assert_eq!(p.sum(), parts.iter().map(|&x| u64::from(x)).sum::<u64>());
        let back: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_patchworks_respect_harnack_and_parity(d in 1u32..7, seed in any::<u64>(), sign_seed in any::<u64>()) {
        let t = random_convex_primitive_triangulation(d, seed).unwrap();
        prop_assert!(t.is_primitive());
        let n = t.vertices.len();
        let s = SignDistribution::from_bits(n, sign_seed);
        let scheme = extract_scheme(&build_patchwork(&t, &s).unwrap()).unwrap();
        prop_assert!(scheme.oval_count() as u64 <= harnack_bound(d).unwrap());
        prop_assert_eq!(scheme.pseudoline, d % 2 == 1);
        let flipped = extract_scheme(&build_patchwork(&t, &s.negated()).unwrap()).unwrap();
        prop_assert_eq!(flipped, scheme);
    }

    #[test]
    fn haas_plans_validate(d in 12u32..31, picks in proptest::collection::vec(any::<prop::sample::Index>(), 4)) {
        let sizes = partition_sizes(d).unwrap();
        let lams: Vec<Partition> = sizes
            .iter()
            .zip(picks.iter().cycle())
            .map(|(&m, ix)| {
                let all = enumerate_partitions(m);
                all[ix.index(all.len())].clone()
            })
            .collect();
        let plan = build_haas_plan(d, &lams).unwrap();
        let parts: usize = lams.iter().map(Partition::len).sum();
        prop_assert_eq!(plan.zone_count(), haas_k(d).unwrap() as usize + parts + 2);
        let pts = newton_triangle_points(d).unwrap();
        let signs = sign_distribution_from_zones(&plan, &pts);
        for (v, &(x, y)) in pts.iter().enumerate() {
            if y % 2 == 0 {
                let expect = if (x * y) % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(signs.get(v), expect);
            }
        }
    }
}
