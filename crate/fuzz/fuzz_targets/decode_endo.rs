#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use linset_core::fields::FieldTower;
use linset_core::endos::Endo;

fn towers() -> &'static [FieldTower] {
    static TOWERS: OnceLock<Vec<FieldTower>> = OnceLock::new();
    TOWERS.get_or_init(|| {
        [(2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2)]
            .iter()
            .map(|&(p, e, t)| FieldTower::new(p, e, t).unwrap())
            .collect()
    })
}

fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else {
        return;
    };
    let Ok(s) = std::str::from_utf8(rest) else {
        return;
    };
    let tower = &towers()[pick as usize % towers().len()];
    if let Ok(b) = Endo::decode(tower, s) {
        assert_eq!(Endo::decode(tower, &b.encode(tower)).unwrap(), b);
        assert_eq!(Endo::decode(tower, &b.encode_matrix(tower)).unwrap(), b);
    }
});
