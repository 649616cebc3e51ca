//! Scores symbols from a precomputed embedding cache and compares it with
//! the exact-match backend.

use std::collections::BTreeSet;

use argsim::simp::{load_backend, EmbeddingCache, ExactMatch, SymbolSimilarity};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/t1t2.embedding.json");
    let cache = EmbeddingCache::load(path).unwrap();
    println!("{} ({} symbols, dim {})", cache.model_tag, cache.symbols().count(), cache.dim());
    for (a, b) in [("dog", "monkey"), ("dog", "dog"), ("dog", "zoo"), ("Tease", "AtLocation")] {
        println!("  {a} ~ {b}: embedding {:.3}  eq {:.3}", cache.score(a, b), ExactMatch.score(a, b));
    }

    let wanted: BTreeSet<String> = ["dog", "cat"].map(String::from).into();
    println!("missing from cache: {:?}", cache.missing(&wanted));

    let same = load_backend(&format!("embedding:{path}")).unwrap();
    println!("loaded via backend name: {}", same.label());
}
