use hypfree_core::freepath::free_path;
use hypfree_core::{is_free, pentagon, Field, PathStatus};

#[test]
fn both_ends_are_free() {
    let (a, b) = pentagon();
    assert_eq!(a.field(), Field::quadratic(5).unwrap());
    assert_eq!((a.len(), b.len()), (11, 7));
    assert!(b.is_subset_of(&a));
    assert_eq!(is_free(&a).exponents(), Some(&[1, 5, 5][..]));
    assert_eq!(is_free(&b).exponents(), Some(&[1, 3, 3][..]));
}

#[test]
fn every_restriction_has_five_lines_and_no_deletion_is_free() {
    let (a, _) = pentagon();
    for i in 0..a.len() {
        assert_eq!(a.restrict(i).unwrap().len(), 5, "restriction {i}");
        assert!(!is_free(&a.delete(i).unwrap()).is_free(), "deletion {i}");
    }
}

#[test]
fn no_free_path() {
    let (a, b) = pentagon();
    let r = free_path(&b, &a).unwrap();
    assert_eq!(r.status, PathStatus::None);
    assert!(r.chain.is_empty());
    assert_eq!(r.explored.len(), 16);
    assert_eq!(r.explored.values().filter(|&&f| f).count(), 2);
}
