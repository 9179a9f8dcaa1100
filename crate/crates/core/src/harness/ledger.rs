//! Which check embodies which structural result.

pub const LEDGER: &[(&str, &[&str])] = &[
    ("axioms of a restricted Lie algebra", &["def-restricted-axioms"]),
    ("p-closure is spanned by iterated p-powers and keeps class", &["fact-p-closure-class"]),
    ("centralizers, normalizers and the Fitting subalgebra are p-subalgebras", &["fact-p-subalgebras"]),
    ("p-powers from abelian ideals are central", &["fact-abelian-ideal-powers"]),
    ("minimal ideals of soluble algebras are abelian p-ideals", &["fact-minimal-ideal-p"]),
    ("tori of a nilpotent algebra are central", &["prop-central-tori"]),
    ("nilpotent algebras of class at most p split as torus plus p-nilpotent part", &["prop-nilpotent-structure"]),
    ("tori in a Fitting subalgebra of small class are central", &["lemma-fitting-torus"]),
    ("toral decomposition of abelian p-algebras", &["cor-toral-decomposition", "def-torus"]),
    ("p-closure of a pure subalgebra plus one element", &["lemma-purity-decomposition"]),
    ("pure subalgebras have p-nilpotent complements", &["prop-purity-complement"]),
    ("unique p-th roots without p-nilpotents", &["cor-unique-root"]),
    ("p-nilpotent lifts along p-morphisms", &["cor-lift-p-nilpotent"]),
    ("semisimple and p-nilpotent parts of an element", &["def-semisimple-elements"]),
    ("finitely many semisimple elements generate a cyclic module", &["lemma-cyclic-generator"]),
    ("restricted representations", &["def-p-module"]),
    ("Maschke decomposition under a torus", &["fact-maschke"]),
    ("V = V^n + [n, V] for p-divisible nilpotent n", &["prop-vnv"]),
    ("normalizer equals centralizer for p-divisible nilpotent subalgebras", &["cor-normalizer-centralizer"]),
    ("weight space decomposition", &["cor-weight-spaces", "cor-weight-decomposition"]),
    ("torus-free soluble algebras are nilpotent", &["prop-nilpotency-criterion"]),
    ("extension of a torus by a torus is a torus", &["lemma-maximality"]),
    ("centralizers of maximal tori are nilpotent and self-normalizing", &["prop-nilpotent-centralizer"]),
    ("Engel subalgebra of a torus is its centralizer", &["lemma-engel-centralizer"]),
    ("Engel subalgebra of a nilpotent p-subalgebra is that of its torus", &["lemma-generalized-centralizer"]),
    ("Cartan subalgebras are centralizers of maximal tori", &["thm-cartan-tori", "thm-cartan-derived-sum"]),
    ("maximal tori map onto maximal tori of quotients", &["prop-torus-quotient"]),
    ("maximal tori have constant dimension", &["cor-torus-rank-constant"]),
    ("maximal abelian non-ideal subalgebras are p-subalgebras", &["lemma-maximal-abelian-p"]),
    ("the p-Frattini subalgebra is a nilpotent p-ideal", &["prop-frattini-p-ideal", "cor-frattini-nilpotent"]),
    ("ideals inside the Frattini subalgebra of a subalgebra", &["lemma-frattini-subalgebra"]),
    ("splitting over abelian ideals avoiding the Frattini subalgebra", &["lemma-frattini-splitting"]),
    ("the socle is a direct sum of minimal abelian ideals", &["lemma-socle"]),
    ("splitting over the socle when the p-Frattini subalgebra vanishes", &["cor-socle-splitting"]),
    ("vanishing Frattini subalgebra iff splitting over the socle", &["thm-socle-frattini"]),
    ("the Frattini subalgebra lies in the p-Frattini subalgebra", &["thm-frattini-inclusion"]),
    ("the Witt algebra: semisimple basis element and sl2 copy", &["fact-witt-semisimple", "fact-sl2-embedding"]),
    ("minimal simple p-algebras", &["def-minimal-simple"]),
];
