//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any fails. Every check is exact.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use normtower::absgroup::{
    aut_abstract, automorphism_tower, centreless_catalog, check_prop_2_3, named_group, FiniteGroup,
    CATALOG_ORDER_BOUND, DEFAULT_ORDER_BOUND,
};
use normtower::graphs::{aut_group, canonical_form, encode_tree, rigid_family, Graph};
use normtower::grouptop::{normalizer_with, perm_iso_groups, Backend};
use normtower::normtrees::{build_normal, count_extensions, extend_iso, PartialTreeIso, Tree};
use normtower::projline::{galois_subgroup_indices, verify_lemma_2_4};
use normtower::towerlab::{
    assemble_main, build_d, build_stage, check_conditions, d_report, e_for_target, relabel_by_e,
    stage_table, RepresentativePolicy, StageOptions,
};
use normtower::{PermGroup, Permutation, SearchConfig};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

/// Heap's algorithm over all permutations of `0..n`.
fn all_permutations(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Normaliser of `g` in `Sym(degree)` by scanning every permutation.
fn brute_normaliser_order(g: &PermGroup, check: &PermGroup) -> Result<u128, String> {
    let mut count = 0u128;
    let mut missing = None;
    all_permutations(g.degree(), |images| {
        let p = Permutation::from_images(images.to_vec()).unwrap();
        let pinv = p.inverse();
        if g.generators().iter().all(|x| g.contains(&(&(&p * x) * &pinv))) {
            count += 1;
            if missing.is_none() && !check.contains(&p) {
                missing = Some(images.to_vec());
            }
        }
    });
    match missing {
        Some(m) => Err(format!("normalising permutation {m:?} missing from backtrack result")),
        None => Ok(count),
    }
}

fn seed() -> Graph {
    let family = rigid_family(1).unwrap();
    assert!(family.verify());
    family.members[0].clone()
}

fn criterion_1() -> Result<String, String> {
    let start = Instant::now();
    let gamma = seed();
    ensure(gamma.vertex_count() == 6, || "seed is not 6-vertex".into())?;
    let backtrack = SearchConfig::with_backend(Backend::Backtrack);
    let mut heights = Vec::new();
    for n in 0..=3 {
        let s = build_stage(&gamma, n, &StageOptions::default()).map_err(|e| e.to_string())?;
        ensure(s.tower_height() == n, || format!("stage {n} height {}", s.tower_height()))?;
        let ambient = PermGroup::symmetric(1 << n);
        for (i, level) in s.tower.levels.iter().enumerate() {
            let fast = normalizer_with(&ambient, level, &backtrack).map_err(|e| e.to_string())?;
            let brute = brute_normaliser_order(level, &fast)?;
            ensure(brute == fast.order(), || {
                format!("stage {n} level {i}: brute {brute} vs backtrack {}", fast.order())
            })?;
            let next = s.tower.levels.get(i + 1).unwrap_or(level);
            ensure(fast.same_group(next), || format!("stage {n} level {i} successor mismatch"))?;
        }
        heights.push(s.tower_height());
    }
    within(start, Duration::from_secs(60), "stage heights")?;
    Ok(format!("heights {heights:?} for n=0..3, brute-force normalisers agree"))
}

fn criterion_2() -> Result<String, String> {
    let table = stage_table(3).map_err(|e| e.to_string())?;
    let orders: Vec<u128> = table.f.iter().map(PermGroup::order).collect();
    for (n, &o) in orders.iter().enumerate() {
        ensure(o == 1u128 << ((1u32 << n) - 1), || format!("|F_{n}| = {o}"))?;
    }
    let sym2 = PermGroup::symmetric(2);
    let iso1 = perm_iso_groups(&table.f[1], &sym2).ok_or("F_1 not isomorphic to Sym(2)")?;
    ensure(iso1.verify(&table.f[1], &sym2), || "F_1 witness fails".into())?;
    // Sym(2) wr Sym(2) on {0,1} ∪ {2,3}.
    let wreath = PermGroup::new(
        4,
        vec![
            Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
        ],
    )
    .unwrap();
    let iso2 = perm_iso_groups(&table.f[2], &wreath).ok_or("F_2 not isomorphic to Sym(2) wr Sym(2)")?;
    ensure(iso2.verify(&table.f[2], &wreath), || "F_2 witness fails".into())?;
    Ok(format!("|F_n| = {orders:?}; F_1 and F_2 witnesses verified"))
}

fn criterion_3() -> Result<String, String> {
    let gamma = seed();
    let cfg = SearchConfig::default();
    let mut chains = Vec::new();
    for n in 0..=3 {
        let s = build_stage(&gamma, n, &StageOptions::default()).map_err(|e| e.to_string())?;
        let r = check_conditions(&s, &cfg);
        let failed: Vec<_> = r.conditions.iter().filter(|c| !c.passed).map(|c| c.id).collect();
        ensure(r.all_passed, || format!("stage {n}: conditions {failed:?} fail"))?;
        let expected: Vec<usize> = (0..=n).map(|b| 1 << b).collect();
        ensure(r.block_chain_sizes == expected, || {
            format!("stage {n}: block chain {:?}", r.block_chain_sizes)
        })?;
        ensure(r.get(7).is_some_and(|c| c.passed), || format!("stage {n}: (7) missing"))?;
        chains.push(r.block_chain_sizes.len());
        if n >= 2 {
            let t = check_conditions(&s.tampered(), &cfg);
            ensure(!t.all_passed, || format!("stage {n}: tampered F passes"))?;
        }
    }
    Ok(format!("all seven conditions hold, chain lengths {chains:?}, tampered stages 2,3 rejected"))
}

fn criterion_4() -> Result<String, String> {
    let start = Instant::now();
    let opts = StageOptions::default();
    let mut seen = Vec::new();
    for n in 2..=3 {
        for m in 1..n {
            let d = build_d(n, m, &opts).map_err(|e| e.to_string())?;
            let r = d_report(&d, &opts).map_err(|e| e.to_string())?;
            ensure(r.height == m, || format!("D^{n}_{m} height {}", r.height))?;
            ensure(r.wreath_level_matches, || format!("D^{n}_{m} level {m} is not the wreath product"))?;
            seen.push(format!("D^{n}_{m}={}", r.height));
        }
    }
    within(start, Duration::from_secs(120), "D-construction")?;
    Ok(format!("{}, wreath level verified", seen.join(" ")))
}

fn criterion_5() -> Result<String, String> {
    let start = Instant::now();
    let l = 3;
    let opts = StageOptions::default();
    let family = rigid_family(l + 1).map_err(|e| e.to_string())?;
    let mut cases = Vec::new();
    for alpha in 0..l {
        let a = assemble_main(&family, l, alpha, &opts).map_err(|e| e.to_string())?;
        let h = a.tower(&opts).map_err(|e| e.to_string())?.height;
        ensure(h == alpha, || format!("assembly alpha={alpha} has height {h}"))?;
        for beta in 1..l {
            let e = e_for_target(l, alpha, beta);
            for policy in [RepresentativePolicy::Min, RepresentativePolicy::Max] {
                let o = relabel_by_e(&a, &e, policy, &opts).map_err(|e| e.to_string())?;
                ensure(o.predicted == Some(beta) && o.measured == beta && o.consistent(), || {
                    format!(
                        "alpha={alpha} beta={beta} {policy:?}: predicted {:?} measured {}",
                        o.predicted, o.measured
                    )
                })?;
            }
            cases.push(format!("({alpha},{beta})"));
        }
    }
    within(start, Duration::from_secs(300), "assembly")?;
    Ok(format!("L=3 pairs {} all measured = predicted under both policies", cases.join(",")))
}

/// |Aut(G)| by trying every assignment of images to the generators.
fn brute_aut_order(g: &FiniteGroup) -> usize {
    let n = g.order();
    let gens = g.generators().to_vec();
    let mut count = 0;
    let mut images = vec![0; gens.len()];
    loop {
        let mut map = vec![usize::MAX; n];
        map[g.identity()] = g.identity();
        let mut queue = vec![g.identity()];
        let mut ok = true;
        let mut i = 0;
        while ok && i < queue.len() {
            let x = queue[i];
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let fy = g.mul(map[x], images[k]);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    ok = false;
                    break;
                }
            }
            i += 1;
        }
        if ok && queue.len() == n {
            let mut hit = vec![false; n];
            let bijective = map.iter().all(|&y| !std::mem::replace(&mut hit[y], true));
            let hom = (0..n).all(|a| (0..n).all(|b| map[g.mul(a, b)] == g.mul(map[a], map[b])));
            if bijective && hom {
                count += 1;
            }
        }
        let mut k = 0;
        while k < images.len() {
            images[k] += 1;
            if images[k] < n {
                break;
            }
            images[k] = 0;
            k += 1;
        }
        if k == images.len() {
            return count;
        }
    }
}

fn criterion_6() -> Result<String, String> {
    let mut taus = Vec::new();
    for (name, tau) in [("sym3", 0), ("sym4", 0), ("dihedral10", 1)] {
        let g = named_group(name).ok_or(format!("{name} missing"))?;
        let t = automorphism_tower(&g, DEFAULT_ORDER_BOUND).map_err(|e| e.to_string())?;
        ensure(t.height == tau && t.complete, || format!("tau({name}) = {}", t.height))?;
        for level in &t.levels {
            let fast = aut_abstract(level, DEFAULT_ORDER_BOUND).map_err(|e| e.to_string())?.order();
            let brute = brute_aut_order(level);
            ensure(fast == brute, || format!("{name}: |Aut| {fast} vs oracle {brute}"))?;
        }
        taus.push(format!("{name}:{}", t.height));
    }
    let mut checked = 0;
    for (name, g) in centreless_catalog() {
        ensure(g.order() <= 24, || format!("{name} has order {}", g.order()))?;
        let t = automorphism_tower(&g, CATALOG_ORDER_BOUND).map_err(|e| format!("{name}: {e}"))?;
        let r = check_prop_2_3(&t);
        ensure(r.passed, || format!("{name}: normaliser tower check fails"))?;
        checked += 1;
    }
    Ok(format!("{}; normaliser identity holds on {checked} catalog groups", taus.join(" ")))
}

fn criterion_7() -> Result<String, String> {
    let mut runs = 0;
    let mut slowest = Duration::ZERO;
    for q in [4usize, 8, 9, 16] {
        for d in galois_subgroup_indices(q).map_err(|e| e.to_string())? {
            let backend = if q == 16 { Backend::Backtrack } else { Backend::Auto };
            let start = Instant::now();
            let r = verify_lemma_2_4(q, d, &SearchConfig::with_backend(backend)).map_err(|e| e.to_string())?;
            slowest = slowest.max(start.elapsed());
            ensure(r.passed && r.pgl_order_formula_holds, || format!("q={q} d={d} fails"))?;
            ensure(r.pgl_order == (q * (q - 1) * (q + 1)).to_string(), || format!("q={q}: |PGL| {}", r.pgl_order))?;
            runs += 1;
        }
    }
    ensure(slowest <= Duration::from_secs(60), || format!("slowest run {slowest:?}"))?;
    Ok(format!("{runs} (q, H) cases pass, slowest {:.2}s", slowest.as_secs_f64()))
}

/// Reverses the index order on every level.
fn mirror(t: &Tree) -> Tree {
    let parents = t
        .parents()
        .iter()
        .enumerate()
        .map(|(k, level)| {
            let mut out = vec![None; level.len()];
            for (i, p) in level.iter().enumerate() {
                out[level.len() - 1 - i] = p.map(|p| t.level_size(k - 1) - 1 - p);
            }
            out
        })
        .collect();
    Tree::new(parents).unwrap()
}

fn criterion_8() -> Result<String, String> {
    for n in 1..=5 {
        let t = build_normal(n);
        let phi = PartialTreeIso::root_only(t.clone(), mirror(&t)).map_err(|e| e.to_string())?;
        let full = extend_iso(&phi).map_err(|e| e.to_string())?;
        ensure(full.is_full(), || format!("height {n}: extension is not full"))?;
    }
    let table = stage_table(3).map_err(|e| e.to_string())?;
    let mut levels_n = Vec::new();
    let mut levels_n1 = Vec::new();
    for n in 1..=3usize {
        let count = |h: usize| {
            let t = build_normal(h);
            count_extensions(&PartialTreeIso::root_only(t.clone(), t).unwrap()).unwrap()
        };
        let (c_n, c_n1) = (count(n), count(n + 1));
        ensure(c_n1 == table.f[n].order(), || format!("n={n}: {c_n1} vs |F_n| {}", table.f[n].order()))?;
        ensure(c_n == table.f[n - 1].order(), || format!("n={n}: {c_n} vs |F_(n-1)|"))?;
        levels_n.push(c_n);
        levels_n1.push(c_n1);
    }
    Ok(format!(
        "extend_iso full for n<=5; counts for build_normal(n), n=1..3: {levels_n:?} = |F_(n-1)|; \
         for build_normal(n+1): {levels_n1:?} = |F_n| = 2^(2^n-1)"
    ))
}

/// Random rooted tree on `k` nodes, shuffled within levels.
fn random_tree(rng: &mut ChaCha8Rng, k: usize) -> Tree {
    let mut parent = vec![usize::MAX; k];
    let mut depth = vec![0; k];
    for i in 1..k {
        parent[i] = rng.gen_range(0..i);
        depth[i] = depth[parent[i]] + 1;
    }
    layered(&parent, &depth, rng)
}

fn layered(parent: &[usize], depth: &[usize], rng: &mut ChaCha8Rng) -> Tree {
    let height = depth.iter().max().map_or(0, |d| d + 1);
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); height];
    for (v, &d) in depth.iter().enumerate() {
        levels[d].push(v);
    }
    for level in &mut levels {
        level.shuffle(rng);
    }
    let mut pos = vec![0; parent.len()];
    for level in &levels {
        for (i, &v) in level.iter().enumerate() {
            pos[v] = i;
        }
    }
    let parents = levels
        .iter()
        .map(|level| level.iter().map(|&v| (parent[v] != usize::MAX).then(|| pos[parent[v]])).collect())
        .collect();
    Tree::new(parents).unwrap()
}

/// Same tree with every level shuffled.
fn shuffled(t: &Tree, rng: &mut ChaCha8Rng) -> Tree {
    let mut ids = BTreeMap::new();
    for (k, level) in t.parents().iter().enumerate() {
        for i in 0..level.len() {
            let id = ids.len();
            ids.insert((k, i), id);
        }
    }
    let mut parent = vec![usize::MAX; ids.len()];
    let mut depth = vec![0; ids.len()];
    for (&(k, i), &id) in &ids {
        depth[id] = k;
        if let Some(p) = t.parents()[k][i] {
            parent[id] = ids[&(k - 1, p)];
        }
    }
    layered(&parent, &depth, rng)
}

/// Canonical string and automorphism count of the subtree at `x`.
fn ahu(t: &Tree, x: (usize, usize)) -> (String, u128) {
    let mut kids: Vec<(String, u128)> = t.children(x).into_iter().map(|c| ahu(t, c)).collect();
    kids.sort();
    let mut aut: u128 = kids.iter().map(|k| k.1).product();
    let mut run = 1;
    for i in 1..=kids.len() {
        if i < kids.len() && kids[i].0 == kids[i - 1].0 {
            run += 1;
        } else {
            aut *= (1..=run as u128).product::<u128>();
            run = 1;
        }
    }
    let code = format!("({})", kids.into_iter().map(|k| k.0).collect::<String>());
    (code, aut)
}

fn brute_graph_aut(g: &Graph) -> u128 {
    let mut count = 0;
    all_permutations(g.vertex_count(), |p| {
        if g.is_isomorphism_to(g, p) {
            count += 1;
        }
    });
    count
}

fn brute_graph_iso(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() {
        return false;
    }
    let mut found = false;
    all_permutations(a.vertex_count(), |p| found |= a.is_isomorphism_to(b, p));
    found
}

fn criterion_9() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut corpus: Vec<Tree> = vec![random_tree(&mut rng, 1), random_tree(&mut rng, 2)];
    while corpus.len() < 40 {
        let k = rng.gen_range(3..=31);
        corpus.push(random_tree(&mut rng, k));
    }
    for i in 0..10 {
        let copy = shuffled(&corpus[2 * i + 2], &mut rng);
        corpus.push(copy);
    }
    ensure(corpus.iter().all(|t| t.node_count() <= 31), || "corpus tree too large".into())?;
    let codes: Vec<Graph> = corpus.iter().map(|t| encode_tree(t).graph).collect();
    let ahus: Vec<(String, u128)> = corpus.iter().map(|t| ahu(t, (0, 0))).collect();
    let forms: Vec<_> = codes.iter().map(canonical_form).collect();
    let mut brute_used = 0;
    for (i, g) in codes.iter().enumerate() {
        let aut = aut_group(g).order();
        ensure(aut == ahus[i].1, || format!("tree {i}: |Aut| graph {aut} vs tree {}", ahus[i].1))?;
        if g.vertex_count() <= 8 {
            ensure(brute_graph_aut(g) == aut, || format!("tree {i}: brute |Aut| differs"))?;
            brute_used += 1;
        }
    }
    let mut iso_pairs = 0;
    for i in 0..corpus.len() {
        for j in i + 1..corpus.len() {
            let trees_iso = ahus[i].0 == ahus[j].0;
            let graphs_iso = if codes[i].vertex_count() <= 8 && codes[j].vertex_count() <= 8 {
                brute_graph_iso(&codes[i], &codes[j])
            } else {
                forms[i] == forms[j]
            };
            ensure(trees_iso == graphs_iso, || format!("trees {i},{j}: iso {trees_iso} vs coded {graphs_iso}"))?;
            iso_pairs += usize::from(trees_iso);
        }
    }
    Ok(format!(
        "{} trees, |Aut| preserved, {iso_pairs} isomorphic pairs and all others separated, {brute_used} brute-forced",
        corpus.len()
    ))
}

const CLI_CASES: &[&[&str]] = &[
    &["stage", "--n", "2"],
    &["stage", "--n", "0"],
    &["stage", "--n", "2", "--tamper"],
    &["stage", "--n", "3", "--vertex-check"],
    &["relabel", "--L", "3", "--alpha", "2", "--beta", "1"],
    &["relabel", "--L", "4", "--alpha", "1", "--beta", "2"],
    &["relabel", "--L", "3", "--alpha", "2", "--identity"],
    &["d", "--n", "3", "--m", "2"],
    &["tower", "--group", "dihedral10"],
    &["tower", "--catalog"],
    &["pgl", "--q", "4", "--H", "trivial"],
    &["pgl", "--q", "9"],
    &["tree", "--extend-iso", "--height", "3"],
    &["graph", "rigid", "--k", "3"],
    &["graph", "encode-tree", "--height", "3"],
    &["stage", "--n", "9"],
];

fn criterion_10() -> Result<String, String> {
    let bin = env!("CARGO_BIN_EXE_normtower");
    let dir = std::env::temp_dir().join(format!("normtower-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    for (i, args) in CLI_CASES.iter().enumerate() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out = Command::new(bin).args(*args).output().map_err(|e| e.to_string())?;
            let file = dir.join(format!("{i}-{run}.json"));
            let status = Command::new(bin)
                .args(*args)
                .arg("--out")
                .arg(&file)
                .status()
                .map_err(|e| e.to_string())?;
            ensure(status.code() == out.status.code(), || format!("{args:?}: exit codes differ"))?;
            let written = std::fs::read(&file).map_err(|e| e.to_string())?;
            ensure(written == out.stdout, || format!("{args:?}: --out differs from stdout"))?;
            outputs.push((out.status.code(), out.stdout));
        }
        ensure(outputs[0] == outputs[1], || format!("{args:?}: reruns differ"))?;
        let doc: serde_json::Value = serde_json::from_slice(&outputs[0].1).map_err(|e| e.to_string())?;
        ensure(doc["schema_version"] == 1, || format!("{args:?}: schema_version missing"))?;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} commands byte-identical across reruns and --out", CLI_CASES.len()))
}

fn main() {
    let criteria: [(u32, Check); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, check) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS ({secs:.2}s) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id}: FAIL ({secs:.2}s) {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
