//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::{HashSet, VecDeque};
use std::time::Instant;

use cluster_presents::companion::{companion_matrix, is_companion_basis, mutate_companion, CompanionBasis, CompanionFailure, Direction};
use cluster_presents::coset::coset_enumerate;
use cluster_presents::diagram::{mutation_class, validate_finite_type_local, DEFAULT_CLASS_CAP};
use cluster_presents::group::{group_order, perm_rep, verify_mutation_isomorphism, weyl_order, Strategy};
use cluster_presents::presentation::{coxeter_presentation, full_presentation, reduced_presentation};
use cluster_presents::roots::{build_root_system, RootVector};
use cluster_presents::{local_switch, signed_graph, Diagram, DynkinType, ExchangeMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: usize = 2_000_000;
const RANDOM_SEQUENCES: usize = 1000;
const MAX_SEQUENCE_LEN: usize = 10;
const MAX_COMPANION_SEQUENCE_LEN: usize = 8;
const SWITCH_RADIUS: usize = 6;

type Outcome = Result<String, String>;

fn square() -> Diagram {
    Diagram::from_triples(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]).unwrap()
}

fn tested_types() -> Vec<DynkinType> {
    let mut out: Vec<DynkinType> = (2..=7).map(DynkinType::A).collect();
    out.extend((2..=5).map(DynkinType::B));
    out.extend((4..=6).map(DynkinType::D));
    out.push(DynkinType::F4);
    out.push(DynkinType::G2);
    out
}

/// Full mutation classes of every type in the tested type set.
fn type_set() -> Vec<(DynkinType, Vec<Diagram>)> {
    tested_types()
        .into_iter()
        .map(|ty| (ty, mutation_class(&ty.seed_diagram(), DEFAULT_CLASS_CAP).unwrap().members))
        .collect()
}

fn order_direct(p: &cluster_presents::Presentation) -> Result<u64, String> {
    group_order(p, Strategy::Direct, CAP).map(|r| r.order).map_err(|e| e.to_string())
}

fn criterion_1(set: &[(DynkinType, Vec<Diagram>)]) -> Outcome {
    let mut checked = 0;
    for (ty, members) in set {
        let expect = weyl_order(*ty).map_err(|e| e.to_string())?;
        for m in members {
            let p = reduced_presentation(m).map_err(|e| e.to_string())?;
            let o = order_direct(&p)?;
            if o != expect {
                return Err(format!("{ty}: member of order {o}, expected {expect}\n{m}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} members across {} classes", set.len()))
}

fn criterion_2(set: &[(DynkinType, Vec<Diagram>)]) -> Outcome {
    let mut checked = 0;
    for (ty, members) in set {
        for m in members {
            let full = order_direct(&full_presentation(m).map_err(|e| e.to_string())?)?;
            let reduced = order_direct(&reduced_presentation(m).map_err(|e| e.to_string())?)?;
            if full != reduced {
                return Err(format!("{ty}: full {full} vs reduced {reduced}\n{m}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} diagrams"))
}

fn criterion_3() -> Outcome {
    let golden = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/d4_square_full.txt"))
        .map_err(|e| e.to_string())?;
    let generated = full_presentation(&square()).map_err(|e| e.to_string())?.to_string();
    if generated == golden {
        Ok(format!("{} bytes identical", golden.len()))
    } else {
        Err(format!("generated presentation differs:\n{generated}"))
    }
}

fn criterion_4(set: &[(DynkinType, Vec<Diagram>)]) -> Outcome {
    let mut checked = 0;
    for (ty, members) in set {
        for m in members {
            let o = order_direct(&reduced_presentation(m).map_err(|e| e.to_string())?)?;
            let op = order_direct(&reduced_presentation(&m.opposite()).map_err(|e| e.to_string())?)?;
            if o != op {
                return Err(format!("{ty}: {o} vs opposite {op}\n{m}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} diagrams"))
}

fn criterion_5() -> Outcome {
    let types = [DynkinType::A(3), DynkinType::A(4), DynkinType::B(3), DynkinType::D(4), DynkinType::G2];
    let mut pairs = 0;
    for ty in types {
        let class = mutation_class(&ty.seed_diagram(), DEFAULT_CLASS_CAP).map_err(|e| e.to_string())?;
        for m in &class.members {
            for k in 0..m.rank() {
                let c = verify_mutation_isomorphism(m, k, CAP).map_err(|e| e.to_string())?;
                if !c.passed {
                    return Err(format!("{}: vertex {} fails {:?}\n{m}", ty.diagram_label(), k + 1, c));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (member, vertex) pairs"))
}

fn rank_six_types() -> Vec<DynkinType> {
    let mut out: Vec<DynkinType> = (1..=6).map(DynkinType::A).collect();
    for n in 2..=6 {
        out.push(DynkinType::B(n));
        out.push(DynkinType::C(n));
    }
    out.extend((4..=6).map(DynkinType::D));
    out.extend([DynkinType::E(6), DynkinType::F4, DynkinType::G2]);
    out
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut steps = 0;
    for ty in rank_six_types() {
        let n = ty.rank();
        for _ in 0..RANDOM_SEQUENCES {
            let len = rng.gen_range(1..=MAX_SEQUENCE_LEN);
            let mut b = ty.seed_matrix();
            for _ in 0..len {
                let k = rng.gen_range(0..n);
                let next = b.mutate(k).map_err(|e| e.to_string())?;
                let via_diagram = Diagram::of(&b).mutate(k).map_err(|e| e.to_string())?;
                if Diagram::of(&next) != via_diagram {
                    return Err(format!("{ty}: diagram mutation disagrees at vertex {}\n{b}", k + 1));
                }
                if next.mutate(k).map_err(|e| e.to_string())? != b || via_diagram.mutate(k).map_err(|e| e.to_string())? != Diagram::of(&b) {
                    return Err(format!("{ty}: mutation at {} is not an involution\n{b}", k + 1));
                }
                b = next;
                steps += 1;
            }
        }
    }
    Ok(format!("{steps} steps over {} types", rank_six_types().len()))
}

struct CompanionStats {
    steps: usize,
    heavy_steps: usize,
    matrices: Vec<(ExchangeMatrix, cluster_presents::QuasiCartanMatrix)>,
}

fn companion_walks() -> Result<CompanionStats, String> {
    let types = [DynkinType::A(4), DynkinType::B(3), DynkinType::C(3), DynkinType::D(4), DynkinType::F4, DynkinType::G2];
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut stats = CompanionStats {
        steps: 0,
        heavy_steps: 0,
        matrices: Vec::new(),
    };
    let mut seen: HashSet<(Vec<Vec<i64>>, Vec<RootVector>)> = HashSet::new();
    for ty in types {
        let system = build_root_system(ty).map_err(|e| e.to_string())?;
        let n = ty.rank();
        for _ in 0..RANDOM_SEQUENCES {
            let len = rng.gen_range(1..=MAX_COMPANION_SEQUENCE_LEN);
            let mut b = ty.seed_matrix();
            let mut basis = CompanionBasis::simple(&system);
            for _ in 0..len {
                let k = rng.gen_range(0..n);
                let g = Diagram::of(&b);
                let next_b = b.mutate(k).map_err(|e| e.to_string())?;
                let next = mutate_companion(&system, &basis, k, &g, Direction::Inward).map_err(|e| e.to_string())?;
                let check = is_companion_basis(&system, &next, &next_b).map_err(|e| e.to_string())?;
                if !check.passed {
                    return Err(format!("{ty}: not a companion basis after mutating at {}: {:?}\n{next}", k + 1, check.reason));
                }
                let back = mutate_companion(&system, &next, k, &Diagram::of(&next_b), Direction::Outward).map_err(|e| e.to_string())?;
                if back != basis {
                    return Err(format!("{ty}: outward mutation at {} does not restore\n{basis}", k + 1));
                }
                if g.neighbours(k).iter().any(|&j| g.undirected_weight(k, j) > 1) {
                    stats.heavy_steps += 1;
                }
                b = next_b;
                basis = next;
                stats.steps += 1;
                if seen.insert((b.rows().to_vec(), basis.vectors.clone())) {
                    let a = companion_matrix(&system, &basis).map_err(|e| e.to_string())?;
                    stats.matrices.push((b.clone(), a));
                }
            }
        }
    }
    Ok(stats)
}

fn criterion_7(stats: &Result<CompanionStats, String>) -> Outcome {
    let s = stats.as_ref().map_err(Clone::clone)?;
    Ok(format!("{} steps, {} at vertices with a weight > 1 edge", s.steps, s.heavy_steps))
}

fn criterion_8(stats: &Result<CompanionStats, String>) -> Outcome {
    let s = stats.as_ref().map_err(Clone::clone)?;
    for (b, a) in &s.matrices {
        if !a.is_positive().map_err(|e| e.to_string())? {
            return Err(format!("companion matrix not positive\n{a}"));
        }
        if !a.cycle_sign_condition(&Diagram::of(b)) {
            return Err(format!("cycle sign condition fails\n{a}\nfor\n{b}"));
        }
    }
    Ok(format!("{} distinct companion matrices", s.matrices.len()))
}

fn criterion_9() -> Outcome {
    let mut checks = 0;
    for ty in [DynkinType::A(4), DynkinType::D(4)] {
        let system = build_root_system(ty).map_err(|e| e.to_string())?;
        let n = ty.rank();
        let start = (ty.seed_matrix(), CompanionBasis::simple(&system));
        let mut seen = HashSet::from([(start.0.rows().to_vec(), start.1.vectors.clone())]);
        let mut queue = VecDeque::from([(start, 0usize)]);
        while let Some(((b, basis), depth)) = queue.pop_front() {
            let g = Diagram::of(&b);
            let before = signed_graph(&companion_matrix(&system, &basis).map_err(|e| e.to_string())?);
            for k in 0..n {
                let next = mutate_companion(&system, &basis, k, &g, Direction::Inward).map_err(|e| e.to_string())?;
                let after = signed_graph(&companion_matrix(&system, &next).map_err(|e| e.to_string())?);
                let switched = local_switch(&before, k, &g.in_neighbours(k)).map_err(|e| e.to_string())?;
                if after != switched {
                    return Err(format!("{ty}: vertex {}\n{after}vs\n{switched}", k + 1));
                }
                checks += 1;
                if depth < SWITCH_RADIUS {
                    let next_b = b.mutate(k).map_err(|e| e.to_string())?;
                    if seen.insert((next_b.rows().to_vec(), next.vectors.clone())) {
                        queue.push_back(((next_b, next), depth + 1));
                    }
                }
            }
        }
    }
    Ok(format!("{checks} (basis, vertex) pairs"))
}

fn criterion_10() -> Outcome {
    let system = build_root_system(DynkinType::A(4)).map_err(|e| e.to_string())?;
    let partial_sums = CompanionBasis {
        vectors: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [0, 1, 1, 1]]
            .iter()
            .map(|r| RootVector(r.to_vec()))
            .collect(),
    };
    let check = is_companion_basis(&system, &partial_sums, &DynkinType::A(4).seed_matrix()).map_err(|e| e.to_string())?;
    if !matches!(check.reason, Some(CompanionFailure::NotCompanion { .. })) {
        return Err(format!("A4 basis verdict {check:?}"));
    }
    let unoriented = Diagram::from_triples(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
    if validate_finite_type_local(&unoriented).passed {
        return Err("non-oriented 3-cycle passed validation".into());
    }
    let b = ExchangeMatrix::new(vec![vec![0, 2], vec![-2, 0]]).map_err(|e| e.to_string())?;
    if b.is_two_finite() {
        return Err("(2, -2) matrix reported 2-finite".into());
    }
    Ok("3 controls rejected".into())
}

fn criterion_11() -> Outcome {
    let mut types: Vec<DynkinType> = (1..=5).map(DynkinType::A).collect();
    for n in 2..=5 {
        types.push(DynkinType::B(n));
        types.push(DynkinType::C(n));
    }
    types.extend([DynkinType::D(4), DynkinType::D(5), DynkinType::F4, DynkinType::G2, DynkinType::D(6)]);
    let mut presentations: Vec<(String, cluster_presents::Presentation)> =
        types.iter().map(|&t| (t.to_string(), coxeter_presentation(t))).collect();
    presentations.push(("square full".into(), full_presentation(&square()).unwrap()));
    presentations.push(("square reduced".into(), reduced_presentation(&square()).unwrap()));
    for (label, p) in &presentations {
        let direct = order_direct(p)?;
        let tower = group_order(p, Strategy::Tower, CAP).map_err(|e| e.to_string())?.order;
        if direct != tower {
            return Err(format!("{label}: direct {direct} vs tower {tower}"));
        }
        let rep = perm_rep(&coset_enumerate(p, &[], CAP).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if rep.degree as u64 != direct {
            return Err(format!("{label}: regular degree {} vs order {direct}", rep.degree));
        }
        if !rep.images.iter().all(|g| g.is_involution()) || !rep.is_transitive() {
            return Err(format!("{label}: generator images are not transitive involutions"));
        }
    }
    Ok(format!("{} presentations", presentations.len()))
}

fn report(number: usize, name: &str, started: Instant, outcome: Outcome) -> bool {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("PASS  {number:>2}  {name}: {detail} ({secs:.1}s)");
            true
        }
        Err(why) => {
            println!("FAIL  {number:>2}  {name}: {why} ({secs:.1}s)");
            false
        }
    }
}

fn main() {
    let mut ok = true;
    let t = Instant::now();
    let set = type_set();
    let sizes: Vec<String> = set.iter().map(|(ty, m)| format!("{}:{}", ty.diagram_label(), m.len())).collect();
    println!("type set {} ({:.1}s)", sizes.join(" "), t.elapsed().as_secs_f64());

    let t = Instant::now();
    ok &= report(1, "reduced presentation orders equal Weyl orders", t, criterion_1(&set));
    let t = Instant::now();
    ok &= report(2, "full and reduced presentations agree", t, criterion_2(&set));
    let t = Instant::now();
    ok &= report(3, "square full presentation golden file", t, criterion_3());
    let t = Instant::now();
    ok &= report(4, "opposite diagrams give equal orders", t, criterion_4(&set));
    let t = Instant::now();
    ok &= report(5, "mutation isomorphism certificates", t, criterion_5());
    let t = Instant::now();
    ok &= report(6, "matrix and diagram mutation commute and are involutions", t, criterion_6());
    let t = Instant::now();
    let walks = companion_walks();
    ok &= report(7, "companion bases survive inward mutation", t, criterion_7(&walks));
    let t = Instant::now();
    ok &= report(8, "companion matrices are positive and satisfy the cycle sign rule", t, criterion_8(&walks));
    let t = Instant::now();
    ok &= report(9, "companion mutation is local switching", t, criterion_9());
    let t = Instant::now();
    ok &= report(10, "negative controls", t, criterion_10());
    let t = Instant::now();
    ok &= report(11, "coset enumerator self-consistency", t, criterion_11());

    if !ok {
        std::process::exit(1);
    }
}
