use hypfree_core::{random_arrangement, FreenessCache, FreenessOracle};

#[test]
fn unit_box_corpus_has_many_free_members() {
    let mut cache = FreenessCache::new();
    let free = (0..200u64)
        .filter(|&s| {
            let a = random_arrangement(s, 3, 4 + (s % 4) as usize, 1).unwrap();
            assert!(a.is_essential());
            cache.verdict(&a).is_free()
        })
        .count();
    assert!(free >= 50, "{free} free of 200");
}

#[test]
fn corpus_is_reproducible() {
    for s in 0..20u64 {
        assert_eq!(random_arrangement(s, 3, 6, 3).unwrap(), random_arrangement(s, 3, 6, 3).unwrap());
    }
}
