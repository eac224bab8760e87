//! Named poset constructions used as fixtures throughout the crate.

use rand::Rng;

use super::poset::FinPoset;

/// Chain c0 ⊑ c1 ⊑ … ⊑ c{n-1}.
pub fn chain(n: usize) -> FinPoset {
    let names = (0..n).map(|i| format!("c{i}")).collect();
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    FinPoset::from_generators(names, &pairs)
}

/// n pairwise-incomparable elements.
pub fn antichain(n: usize) -> FinPoset {
    let names = (0..n).map(|i| format!("a{i}")).collect();
    FinPoset::from_generators(names, &[])
}

/// bot ⊑ {a, b} ⊑ top, with a and b incomparable.
pub fn diamond() -> FinPoset {
    let names = vec!["bot".into(), "a".into(), "b".into(), "top".into()];
    FinPoset::from_generators(names, &[(0, 1), (0, 2), (1, 3), (2, 3)])
}

/// The flat domain on n points: a fresh bottom below n incomparable
/// elements. `lift_flat(1)` is the Sierpinski space, `lift_flat(0)` the
/// one-point poset.
pub fn lift_flat(n: usize) -> FinPoset {
    let mut names = vec!["bot".to_string()];
    names.extend((0..n).map(|i| format!("a{i}")));
    let pairs: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    FinPoset::from_generators(names, &pairs)
}

/// The Boolean lattice of subsets of {a, b, c, …} with `atoms` atoms,
/// ordered by inclusion. Element names render the subsets, e.g. "{a,c}".
pub fn powerset(atoms: usize) -> FinPoset {
    assert!(atoms <= 6, "powerset fixture capped at 6 atoms");
    let letter = |i: usize| (b'a' + i as u8) as char;
    let n = 1usize << atoms;
    let names: Vec<String> = (0..n)
        .map(|mask| {
            let members: Vec<String> = (0..atoms)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| letter(i).to_string())
                .collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let leq: Vec<bool> = (0..n)
        .flat_map(|i| (0..n).map(move |j| i & !j == 0))
        .collect();
    FinPoset::from_table(names, leq)
}

/// The reflexive-transitive closure of a random DAG on n nodes. Edges only
/// go from lower to higher node index, so the closure is always a poset.
pub fn random_dag_closure<R: Rng>(n: usize, edge_prob: f64, rng: &mut R) -> FinPoset {
    let names = (0..n).map(|i| format!("v{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(edge_prob) {
                pairs.push((i, j));
            }
        }
    }
    FinPoset::from_generators(names, &pairs)
}
