use skewrank::exterior::*;
use skewrank::scalar::Scalar;
fn main() {
    let mut t = Multivector::zero(6, 4, false);
    let mut k = 1i64;
    for m in subsets_lex(6, 4) { t.add_term(m, &Scalar::from_int(k)); k += 2; }
    for (m1, m2) in [(0b000001u16, 0b000110u16), (0b000100, 0b000010), (0b000111, 0b001000)] {
        let h1 = Multivector::basis(6, m1, true);
        let h2 = Multivector::basis(6, m2, true);
        let a = h1.wedge(&h2).contract(&t);
        let b = h1.contract(&h2.contract(&t));
        let c = h2.contract(&h1.contract(&t));
        println!("{m1:b},{m2:b}: ab {} ac {} -ab {} -ac {}", a==b, a==c, a==b.scale(&Scalar::from_int(-1)), a==c.scale(&Scalar::from_int(-1)));
    }
}
