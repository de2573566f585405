//! Regenerates `data/su_generators.json`.
//!
//! cargo run --release -p monodromy --example su_table > crates/core/data/su_generators.json

use monodromy::groups::generators::{search_su_generators, SuTable, SuTableEntry};
use monodromy::groups::standard_hermitian_space;

const CASES: [(usize, u32); 6] = [(2, 5), (3, 5), (4, 5), (2, 11), (2, 17), (2, 23)];

fn main() {
    let mut entries = Vec::new();
    for (n, ell) in CASES {
        let space = standard_hermitian_space(n, ell).expect("inert prime");
        let (seed, gens) = (0u64..)
            .find_map(|seed| search_su_generators(&space, seed).ok().map(|g| (seed, g)))
            .expect("some seed succeeds");
        eprintln!("n={n} ell={ell}: seed {seed}, {} generators", gens.len());
        entries.push(SuTableEntry { n, ell, seed, generators: gens.iter().map(|m| m.rows()).collect() });
    }
    let table = SuTable {
        format: 1,
        description: "Generators of SU_n(F_{l^2}) for the identity Hermitian form. \
                      F_{l^2} = F_l[w] with w^2 + w + 1 = 0; an entry [a, b] is a + b*w. \
                      Found by seeded search over Cayley transforms of skew-Hermitian matrices."
            .to_string(),
        entries,
    };
    println!("{}", serde_json::to_string(&table).expect("serializable"));
}
