//! Finitely-branching, multi-sorted well-founded trees with decidable
//! equality.
//!
//! A [`Signature`] declares a finite set of sorts and a finite sequence of
//! constructors, each with a target sort and a finite sequence of argument
//! sorts. Trees are labelled applications of constructors; well-sortedness
//! means every node's child count and child sorts match its constructor's
//! declaration. Because every arity is finite, equality of well-sorted trees
//! reduces to label comparison plus finite conjunction over child positions,
//! decided by [`decide_equal`] with a witness path on the unequal side.

use thiserror::Error;

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum SignatureError {
    #[error("duplicate constructor label `{0}`")]
    DuplicateLabel(String),
    #[error("duplicate sort `{0}`")]
    DuplicateSort(String),
    #[error("constructor `{label}` mentions undeclared sort `{sort}`")]
    UnknownSort { label: String, sort: String },
}

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum WTreeError {
    #[error("unknown sort `{0}`")]
    UnknownSortName(String),
    #[error("at path {path:?}: unknown label `{label}`")]
    UnknownLabel { path: Vec<usize>, label: String },
    #[error("at path {path:?}: `{label}` wants {want} children, got {got}")]
    ArityMismatch {
        path: Vec<usize>,
        label: String,
        want: usize,
        got: usize,
    },
    #[error("at path {path:?}: `{label}` has sort `{got}`, expected `{want}`")]
    SortMismatch {
        path: Vec<usize>,
        label: String,
        want: String,
        got: String,
    },
}

#[derive(Clone, Debug)]
struct CtorDecl {
    label: String,
    target: usize,
    args: Vec<usize>,
}

/// A multi-sorted signature with finite arities.
#[derive(Clone, Debug)]
pub struct Signature {
    sorts: Vec<String>,
    ctors: Vec<CtorDecl>,
}

impl Signature {
    /// `ctors` gives (label, target sort, argument sorts) by name.
    pub fn new(
        sorts: &[&str],
        ctors: &[(&str, &str, &[&str])],
    ) -> Result<Signature, SignatureError> {
        let mut sort_names: Vec<String> = Vec::new();
        for s in sorts {
            if sort_names.iter().any(|x| x == s) {
                return Err(SignatureError::DuplicateSort(s.to_string()));
            }
            sort_names.push(s.to_string());
        }
        let lookup = |label: &str, sort: &str| -> Result<usize, SignatureError> {
            sort_names
                .iter()
                .position(|x| x == sort)
                .ok_or_else(|| SignatureError::UnknownSort {
                    label: label.to_string(),
                    sort: sort.to_string(),
                })
        };
        let mut decls: Vec<CtorDecl> = Vec::new();
        for (label, target, args) in ctors {
            if decls.iter().any(|d| d.label == *label) {
                return Err(SignatureError::DuplicateLabel(label.to_string()));
            }
            decls.push(CtorDecl {
                label: label.to_string(),
                target: lookup(label, target)?,
                args: args
                    .iter()
                    .map(|a| lookup(label, a))
                    .collect::<Result<_, _>>()?,
            });
        }
        Ok(Signature {
            sorts: sort_names,
            ctors: decls,
        })
    }

    pub fn sort_index(&self, name: &str) -> Option<usize> {
        self.sorts.iter().position(|s| s == name)
    }

    pub fn sorts(&self) -> &[String] {
        &self.sorts
    }

    /// All constructor labels whose target is the given sort.
    pub fn ctors_of_sort(&self, sort: usize) -> Vec<&str> {
        self.ctors
            .iter()
            .filter(|d| d.target == sort)
            .map(|d| d.label.as_str())
            .collect()
    }

    fn decl(&self, label: &str) -> Option<&CtorDecl> {
        self.ctors.iter().find(|d| d.label == label)
    }

    pub fn arity(&self, label: &str) -> Option<usize> {
        self.decl(label).map(|d| d.args.len())
    }
}

/// A labelled tree; well-sortedness is checked against a signature.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WTree {
    pub label: String,
    pub children: Vec<WTree>,
}

impl WTree {
    pub fn leaf(label: &str) -> WTree {
        WTree {
            label: label.to_string(),
            children: Vec::new(),
        }
    }

    pub fn node(label: &str, children: Vec<WTree>) -> WTree {
        WTree {
            label: label.to_string(),
            children,
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(WTree::depth).max().unwrap_or(0)
    }
}

/// Accepts iff `t` is a well-sorted tree of the given sort; the error
/// reports the first label/arity/sort mismatch with its path.
pub fn validate_tree(sig: &Signature, sort: &str, t: &WTree) -> Result<(), WTreeError> {
    let sort_idx = sig
        .sort_index(sort)
        .ok_or_else(|| WTreeError::UnknownSortName(sort.to_string()))?;
    let mut path = Vec::new();
    validate_at(sig, sort_idx, t, &mut path)
}

fn validate_at(
    sig: &Signature,
    sort: usize,
    t: &WTree,
    path: &mut Vec<usize>,
) -> Result<(), WTreeError> {
    let decl = sig.decl(&t.label).ok_or_else(|| WTreeError::UnknownLabel {
        path: path.clone(),
        label: t.label.clone(),
    })?;
    if decl.target != sort {
        return Err(WTreeError::SortMismatch {
            path: path.clone(),
            label: t.label.clone(),
            want: sig.sorts[sort].clone(),
            got: sig.sorts[decl.target].clone(),
        });
    }
    if decl.args.len() != t.children.len() {
        return Err(WTreeError::ArityMismatch {
            path: path.clone(),
            label: t.label.clone(),
            want: decl.args.len(),
            got: t.children.len(),
        });
    }
    for (i, (child, &child_sort)) in t.children.iter().zip(&decl.args).enumerate() {
        path.push(i);
        validate_at(sig, child_sort, child, path)?;
        path.pop();
    }
    Ok(())
}

/// Equality verdict with a witness path to the first differing node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeEq {
    Equal,
    Unequal { path: Vec<usize> },
}

/// Decides equality of two well-sorted trees of a shared sort: labels must
/// match and, arity being finite, equality of the children is a finite
/// conjunction over positions. A sort mismatch (either tree failing to be
/// well-sorted at `sort`) is an error, not "unequal".
pub fn decide_equal(
    sig: &Signature,
    sort: &str,
    a: &WTree,
    b: &WTree,
) -> Result<TreeEq, WTreeError> {
    validate_tree(sig, sort, a)?;
    validate_tree(sig, sort, b)?;
    let mut path = Vec::new();
    Ok(compare_at(a, b, &mut path))
}

fn compare_at(a: &WTree, b: &WTree, path: &mut Vec<usize>) -> TreeEq {
    if a.label != b.label || a.children.len() != b.children.len() {
        return TreeEq::Unequal { path: path.clone() };
    }
    for (i, (ca, cb)) in a.children.iter().zip(&b.children).enumerate() {
        path.push(i);
        if let TreeEq::Unequal { path } = compare_at(ca, cb, path) {
            return TreeEq::Unequal { path };
        }
        path.pop();
    }
    TreeEq::Equal
}

/// Generates a random well-sorted tree of the given sort with depth ≤
/// `max_depth`, or `None` when the sort has no tree that shallow. Used by
/// the randomized equality tests.
pub fn random_tree<R: rand::Rng>(
    sig: &Signature,
    sort: usize,
    max_depth: usize,
    rng: &mut R,
) -> Option<WTree> {
    let min = min_depths(sig);
    random_tree_at(sig, &min, sort, max_depth, rng)
}

/// Minimum achievable tree depth per sort; `None` for uninhabited sorts.
fn min_depths(sig: &Signature) -> Vec<Option<usize>> {
    let mut min: Vec<Option<usize>> = vec![None; sig.sorts.len()];
    loop {
        let mut changed = false;
        for d in &sig.ctors {
            let mut worst = 0usize;
            let mut inhabited = true;
            for &s in &d.args {
                match min[s] {
                    Some(m) => worst = worst.max(m),
                    None => {
                        inhabited = false;
                        break;
                    }
                }
            }
            if inhabited {
                let candidate = 1 + worst;
                if min[d.target].is_none_or(|m| candidate < m) {
                    min[d.target] = Some(candidate);
                    changed = true;
                }
            }
        }
        if !changed {
            return min;
        }
    }
}

fn random_tree_at<R: rand::Rng>(
    sig: &Signature,
    min: &[Option<usize>],
    sort: usize,
    max_depth: usize,
    rng: &mut R,
) -> Option<WTree> {
    if max_depth == 0 {
        return None;
    }
    let fits = |d: &&CtorDecl| {
        d.target == sort
            && d.args
                .iter()
                .all(|&s| min[s].is_some_and(|m| m < max_depth))
    };
    let candidates: Vec<&CtorDecl> = sig.ctors.iter().filter(fits).collect();
    if candidates.is_empty() {
        return None;
    }
    let d = candidates[rng.gen_range(0..candidates.len())];
    let children = d
        .args
        .iter()
        .map(|&s| random_tree_at(sig, min, s, max_depth - 1, rng))
        .collect::<Option<Vec<_>>>()?;
    Some(WTree {
        label: d.label.clone(),
        children,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn pcf_type_sig() -> Signature {
        Signature::new(&["ty"], &[("iota", "ty", &[]), ("arrow", "ty", &["ty", "ty"])]).unwrap()
    }

    #[test]
    fn arrow_of_iotas_is_well_sorted() {
        let sig = pcf_type_sig();
        let t = WTree::node("arrow", vec![WTree::leaf("iota"), WTree::leaf("iota")]);
        assert!(validate_tree(&sig, "ty", &t).is_ok());
    }

    #[test]
    fn iota_with_a_child_is_an_arity_mismatch() {
        let sig = pcf_type_sig();
        let t = WTree::node("iota", vec![WTree::leaf("iota")]);
        assert!(matches!(
            validate_tree(&sig, "ty", &t),
            Err(WTreeError::ArityMismatch { want: 0, got: 1, .. })
        ));
    }

    #[test]
    fn term_signature_zero_node_is_well_sorted() {
        // zero : iota, succ : iota=>iota, app over a tiny sort universe.
        let sig = Signature::new(
            &["iota", "iota=>iota"],
            &[
                ("zero", "iota", &[]),
                ("succ", "iota=>iota", &[]),
                ("app", "iota", &["iota=>iota", "iota"]),
            ],
        )
        .unwrap();
        assert!(validate_tree(&sig, "iota", &WTree::leaf("zero")).is_ok());
        let one = WTree::node("app", vec![WTree::leaf("succ"), WTree::leaf("zero")]);
        assert!(validate_tree(&sig, "iota", &one).is_ok());
    }

    #[test]
    fn equal_trees_compare_equal() {
        let sig = pcf_type_sig();
        let t = WTree::node("arrow", vec![WTree::leaf("iota"), WTree::leaf("iota")]);
        assert_eq!(decide_equal(&sig, "ty", &t, &t.clone()).unwrap(), TreeEq::Equal);
    }

    #[test]
    fn first_difference_is_witnessed_by_path() {
        let sig = pcf_type_sig();
        let ii = WTree::node("arrow", vec![WTree::leaf("iota"), WTree::leaf("iota")]);
        let a = WTree::node("arrow", vec![WTree::leaf("iota"), ii.clone()]);
        let b = WTree::node("arrow", vec![ii.clone(), WTree::leaf("iota")]);
        assert_eq!(
            decide_equal(&sig, "ty", &a, &b).unwrap(),
            TreeEq::Unequal { path: vec![0] }
        );
    }

    #[test]
    fn sort_mismatch_is_an_error_not_unequal() {
        let sig = Signature::new(
            &["s", "t"],
            &[("cs", "s", &[]), ("ct", "t", &[])],
        )
        .unwrap();
        let err = decide_equal(&sig, "s", &WTree::leaf("cs"), &WTree::leaf("ct"));
        assert!(matches!(err, Err(WTreeError::SortMismatch { .. })));
    }

    #[test]
    fn random_trees_match_structural_oracle() {
        let sig = pcf_type_sig();
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..500 {
            let a = random_tree(&sig, 0, 6, &mut rng).unwrap();
            let b = random_tree(&sig, 0, 6, &mut rng).unwrap();
            let verdict = decide_equal(&sig, "ty", &a, &b).unwrap();
            // Independent oracle: the derived structural equality.
            assert_eq!(verdict == TreeEq::Equal, a == b);
        }
    }

    #[test]
    fn equality_is_an_equivalence_on_samples() {
        let sig = pcf_type_sig();
        let mut rng = StdRng::seed_from_u64(1);
        let trees: Vec<WTree> = (0..20)
            .map(|_| random_tree(&sig, 0, 4, &mut rng).unwrap())
            .collect();
        let eq = |a: &WTree, b: &WTree| {
            decide_equal(&sig, "ty", a, b).unwrap() == TreeEq::Equal
        };
        for a in &trees {
            assert!(eq(a, a));
            for b in &trees {
                assert_eq!(eq(a, b), eq(b, a));
                for c in &trees {
                    if eq(a, b) && eq(b, c) {
                        assert!(eq(a, c));
                    }
                }
            }
        }
    }
}
