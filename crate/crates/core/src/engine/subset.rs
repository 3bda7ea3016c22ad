use std::cmp::Ordering;
use std::fmt;

/// A set of feature indices, stored as a bitmask.
///
/// The representation is canonical (no trailing zero words), so derived
/// equality and hashing are exact set equality. Ordering is by cardinality
/// first and then lexicographically by ascending indices, which puts `{}`
/// first, then the main effects, then pairs, and so on.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FeatureSubset {
    words: Vec<u64>,
}

impl FeatureSubset {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(index: usize) -> Self {
        let mut s = Self::empty();
        s.insert(index);
        s
    }

    /// `{0, 1, .., d-1}`.
    pub fn full(d: usize) -> Self {
        (0..d).collect()
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().collect()
    }

    pub fn insert(&mut self, index: usize) {
        let (w, b) = (index / 64, index % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, index: usize) {
        let (w, b) = (index / 64, index % 64);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    pub fn with(&self, index: usize) -> Self {
        let mut s = self.clone();
        s.insert(index);
        s
    }

    pub fn without(&self, index: usize) -> Self {
        let mut s = self.clone();
        s.remove(index);
        s
    }

    pub fn contains(&self, index: usize) -> bool {
        let (w, b) = (index / 64, index % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Largest index in the set.
    pub fn max_index(&self) -> Option<usize> {
        let last = self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        trim_words(&mut words);
        Self { words }
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        Self { words }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        trim_words(&mut words);
        Self { words }
    }

    /// Indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// All `2^len` subsets of this set, in binary-counting order over the
    /// ascending members (so `{}` comes first and the set itself last).
    ///
    /// # Panics
    /// If the set has more than 63 members.
    pub fn subsets(&self) -> impl Iterator<Item = FeatureSubset> + '_ {
        let members: Vec<usize> = self.iter().collect();
        assert!(
            members.len() < 64,
            "cannot enumerate subsets of {} features",
            members.len()
        );
        (0u64..1 << members.len()).map(move |mask| expand_mask(mask, &members))
    }

    /// Renders the set as `name:name:..` in ascending index order.
    pub fn label<S: AsRef<str>>(&self, names: &[S]) -> String {
        self.iter()
            .map(|i| {
                names
                    .get(i)
                    .map_or_else(|| format!("f{i}"), |n| n.as_ref().to_string())
            })
            .collect::<Vec<_>>()
            .join(":")
    }

    fn trim(&mut self) {
        trim_words(&mut self.words);
    }
}

fn trim_words(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

/// Maps bit `k` of `mask` to `members[k]`.
pub(crate) fn expand_mask(mask: u64, members: &[usize]) -> FeatureSubset {
    let mut s = FeatureSubset::empty();
    let mut rest = mask;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        s.insert(members[b]);
        rest &= rest - 1;
    }
    s
}

impl FromIterator<usize> for FeatureSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl Ord for FeatureSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for FeatureSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FeatureSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for FeatureSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn basic_set_operations() {
        let a = FeatureSubset::from_indices([0, 3, 70]);
        let b = FeatureSubset::from_indices([3, 4]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(70) && !a.contains(69));
        assert_eq!(a.intersection(&b), FeatureSubset::singleton(3));
        assert_eq!(a.union(&b).iter().collect::<Vec<_>>(), vec![0, 3, 4, 70]);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![0, 70]);
        assert_eq!(a.max_index(), Some(70));
        assert_eq!(a.without(70).max_index(), Some(3));
        // removing the high bit trims the representation back to one word
        assert_eq!(a.without(70), FeatureSubset::from_indices([0, 3]));
        assert_eq!(FeatureSubset::empty().max_index(), None);
    }

    #[test]
    fn subsets_enumerates_powerset() {
        let s = FeatureSubset::from_indices([1, 4, 9]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], FeatureSubset::empty());
        assert_eq!(all[7], s);
        let distinct: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), 8);
        assert!(all.iter().all(|u| u.is_subset(&s)));
    }

    #[test]
    fn ordering_is_by_size_then_lexicographic() {
        let mut v = [
            FeatureSubset::from_indices([0, 1]),
            FeatureSubset::singleton(2),
            FeatureSubset::empty(),
            FeatureSubset::singleton(0),
            FeatureSubset::from_indices([0, 2]),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["{}", "{0}", "{2}", "{0,1}", "{0,2}"]);
    }

    #[test]
    fn label_joins_names() {
        let s = FeatureSubset::from_indices([2, 0]);
        assert_eq!(s.label(&["a", "b", "c"]), "a:c");
        assert_eq!(s.label::<&str>(&[]), "f0:f2");
    }

    proptest! {
        #[test]
        fn matches_btreeset_semantics(
            a in proptest::collection::btree_set(0usize..150, 0..12),
            b in proptest::collection::btree_set(0usize..150, 0..12),
        ) {
            let sa: FeatureSubset = a.iter().copied().collect();
            let sb: FeatureSubset = b.iter().copied().collect();
            let inter: Vec<usize> = a.intersection(&b).copied().collect();
            let uni: Vec<usize> = a.union(&b).copied().collect();
            let diff: Vec<usize> = a.difference(&b).copied().collect();
            prop_assert_eq!(sa.intersection(&sb).iter().collect::<Vec<_>>(), inter);
            prop_assert_eq!(sa.union(&sb).iter().collect::<Vec<_>>(), uni);
            prop_assert_eq!(sa.difference(&sb).iter().collect::<Vec<_>>(), diff);
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.len(), a.len());
            // canonical form: equal sets built in different ways compare equal
            let rebuilt: FeatureSubset = sa.union(&sb).difference(&sb.difference(&sa)).iter().collect();
            prop_assert_eq!(rebuilt, sa);
        }
    }
}
