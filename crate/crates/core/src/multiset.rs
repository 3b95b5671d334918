use alloc::vec::Vec;
use core::num::NonZeroU64;

/// A multiset kept as a sorted vector of `(element, multiplicity)` pairs.
///
/// Bulk operations (partition, union) run in linear time and keep the
/// ordering, which is what tube operations need.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multiset<T> {
    items: Vec<(T, NonZeroU64)>,
    len: u64,
}

impl<T> Default for Multiset<T> {
    fn default() -> Self {
        Multiset {
            items: Vec::new(),
            len: 0,
        }
    }
}

impl<T: Ord> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total number of elements, counting multiplicity.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of distinct elements.
    pub fn distinct(&self) -> usize {
        self.items.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, u64)> + '_ {
        self.items.iter().map(|(t, m)| (t, m.get()))
    }

    pub fn multiplicity(&self, item: &T) -> u64 {
        self.items
            .binary_search_by(|(t, _)| t.cmp(item))
            .map_or(0, |i| self.items[i].1.get())
    }

    pub fn contains(&self, item: &T) -> bool {
        self.multiplicity(item) > 0
    }

    pub fn max_multiplicity(&self) -> u64 {
        self.items.iter().map(|(_, m)| m.get()).max().unwrap_or(0)
    }

    pub fn insert(&mut self, item: T) {
        self.insert_n(item, NonZeroU64::MIN);
    }

    pub fn insert_n(&mut self, item: T, count: NonZeroU64) {
        self.len += count.get();
        match self.items.binary_search_by(|(t, _)| t.cmp(&item)) {
            Ok(i) => self.items[i].1 = self.items[i].1.saturating_add(count.get()),
            Err(i) => self.items.insert(i, (item, count)),
        }
    }

    /// Removes and returns every element.
    pub fn take(&mut self) -> Multiset<T> {
        core::mem::take(self)
    }

    /// Splits into (matching, rest). Multiplicities travel with elements.
    pub fn partition<F>(self, mut pred: F) -> (Multiset<T>, Multiset<T>)
    where
        F: FnMut(&T) -> bool,
    {
        let mut yes = Multiset::new();
        let mut no = Multiset::new();
        for (item, m) in self.items {
            let side = if pred(&item) { &mut yes } else { &mut no };
            side.len += m.get();
            side.items.push((item, m));
        }
        (yes, no)
    }

    /// Multiset sum: multiplicities add.
    pub fn union(self, other: Multiset<T>) -> Multiset<T> {
        if other.is_empty() {
            return self;
        }
        if self.is_empty() {
            return other;
        }
        let len = self.len + other.len;
        let mut items = Vec::with_capacity(self.items.len() + other.items.len());
        let mut a = self.items.into_iter().peekable();
        let mut b = other.items.into_iter().peekable();
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some((x, _)), Some((y, _))) => match x.cmp(y) {
                    core::cmp::Ordering::Less => a.next(),
                    core::cmp::Ordering::Greater => b.next(),
                    core::cmp::Ordering::Equal => {
                        let (x, m) = a.next().expect("peeked");
                        let (_, n) = b.next().expect("peeked");
                        Some((x, m.saturating_add(n.get())))
                    }
                },
                (Some(_), None) => a.next(),
                (None, Some(_)) => b.next(),
                (None, None) => break,
            };
            items.extend(next);
        }
        Multiset { items, len }
    }

    /// Applies `f` to every distinct element, restoring order and merging
    /// elements that became equal.
    pub fn update_each<F>(&mut self, mut f: F)
    where
        F: FnMut(&mut T),
    {
        for (item, _) in &mut self.items {
            f(item);
        }
        if !self.items.windows(2).all(|w| w[0].0 < w[1].0) {
            let items = core::mem::take(&mut self.items);
            let len = self.len;
            *self = items.into_iter().collect_counts();
            debug_assert_eq!(self.len, len);
        }
    }
}

trait CollectCounts<T> {
    fn collect_counts(self) -> Multiset<T>;
}

impl<T: Ord, I: Iterator<Item = (T, NonZeroU64)>> CollectCounts<T> for I {
    fn collect_counts(self) -> Multiset<T> {
        let mut items: Vec<(T, NonZeroU64)> = self.collect();
        items.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Multiset<T> = Multiset::new();
        for (item, m) in items {
            out.len += m.get();
            match out.items.last_mut() {
                Some((last, count)) if *last == item => *count = count.saturating_add(m.get()),
                _ => out.items.push((item, m)),
            }
        }
        out
    }
}

impl<T: Ord> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        iter.into_iter()
            .map(|t| (t, NonZeroU64::MIN))
            .collect_counts()
    }
}

impl<T: Ord> Extend<T> for Multiset<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        let added: Multiset<T> = iter.into_iter().collect();
        *self = self.take().union(added);
    }
}
