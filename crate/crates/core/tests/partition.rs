use proptest::prelude::*;

use sigcert::partition::PartitionTree;

#[test]
fn four_and_three_elements() {
    let t = PartitionTree::build(&[1, 2, 3, 4]).unwrap();
    assert_eq!(t.height(), 3);
    assert_eq!(t.level(1).unwrap(), &[vec![1], vec![2], vec![3], vec![4]]);
    assert_eq!(t.level(2).unwrap(), &[vec![1, 2], vec![3, 4]]);
    assert_eq!(t.level(3).unwrap(), &[vec![1, 2, 3, 4]]);

    let t = PartitionTree::build(&[1, 2, 3]).unwrap();
    assert_eq!(t.level(2).unwrap(), &[vec![1, 2], vec![3]]);
    assert_eq!(t.level(3).unwrap(), &[vec![1, 2, 3]]);
    assert!(t.level(0).is_err() && t.level(4).is_err());

    let t = PartitionTree::build(&[1]).unwrap();
    assert_eq!(t.height(), 1);
    assert!(PartitionTree::<u32>::build(&[]).is_err());
}

proptest! {
    #[test]
    fn levels_are_nested_partitions(n in 1usize..40) {
        let base: Vec<usize> = (0..n).collect();
        let t = PartitionTree::build(&base).unwrap();
        // ceil(log2 n) + 1 levels
        prop_assert_eq!(t.height(), (usize::BITS - (n - 1).leading_zeros()) as usize + 1);
        for i in 1..=t.height() {
            let flat: Vec<usize> = t.level(i).unwrap().iter().flatten().copied().collect();
            prop_assert_eq!(&flat, &base);
            if i > 1 {
                // every block of level i-1 sits inside one block of level i
                for child in t.level(i - 1).unwrap() {
                    prop_assert!(t.level(i).unwrap().iter().any(|b| child.iter().all(|c| b.contains(c))));
                }
            }
        }
        prop_assert_eq!(t.level(1).unwrap().len(), n);
        prop_assert_eq!(t.level(t.height()).unwrap().len(), 1);
    }
}
