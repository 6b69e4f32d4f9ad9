# Regenerates rules.judg; the macros keep repeated types consistent.
M = {}
M['NATC'] = "(Pi (D : Prop), D -> (D -> D) -> D)"
M['B2'] = "(ind_fin {fun (k : Fin 2) => Set} 2 (Fin 0) (Fin 1))"
M['WNAT'] = "(W (b : Fin 2), %s b)" % M['B2']
M['WZERO'] = "(tree {%s} (fin 0 2) (ind_fin {fun (k : Fin 0) => %s} 0))" % (M['WNAT'], M['WNAT'])
M['WONE'] = "(tree {%s} (fin 1 2) (fun (u : Fin 1) => %s))" % (M['WNAT'], M['WZERO'])
M['TONAT'] = ("(ind_w {fun (t : %s) => Nat} (fun (a : Fin 2) (d : %s a -> %s) (ih : Pi (b : %s a), Nat) => "
              "ind_fin {fun (k : Fin 2) => (%s k -> Nat) -> Nat} 2 (fun (g : Fin 0 -> Nat) => 0) "
              "(fun (g : Fin 1 -> Nat) => S (g (fin 0 1))) a ih))") % (M['WNAT'], M['B2'], M['WNAT'], M['B2'], M['B2'])
M['ADD'] = "(fun (m n : Nat) => ind_nat {fun (k : Nat) => Nat} m (fun (k r : Nat) => S r) n)"
M['PAR'] = "(ind_nat {fun (k : Nat) => Nat} 0 (fun (k r : Nat) => ind_nat {fun (j : Nat) => Nat} 1 (fun (j s : Nat) => 0) r))"
M['RPAR'] = "(fun (x y : Nat) => Id Nat (%s x) (%s y))" % (M['PAR'], M['PAR'])
M['QPAR'] = "(Quot Nat %s)" % M['RPAR']
M['RTOP'] = "(fun (x y : Nat) => Fin 1)"
M['QTOP'] = "(Quot Nat %s)" % M['RTOP']
M['SYM'] = "(ind_id {fun (x y : Nat) (e : Id Nat x y) => Id Nat y x} (fun (x : Nat) => refl x))"
M['UNITH'] = ("(fun (t : Trunc Nat) (c c' : Fin 1) => ind_fin {fun (k : Fin 1) => Id (Fin 1) k c'} 1 "
              "(ind_fin {fun (k : Fin 1) => Id (Fin 1) (fin 0 1) k} 1 (refl (fin 0 1)) c') c)")
M['QTOPH'] = "(fun (x x' : Nat) (r : Fin 1) => refl 0)"
M['PARH'] = "(fun (x x' : Nat) (r : Id Nat (%s x) (%s x')) => r)" % (M['PAR'], M['PAR'])

def ex(s):
    for _ in range(6):
        for k, v in sorted(M.items(), key=lambda kv: -len(kv[0])):
            s = s.replace('$' + k, v)
    return s

A = []  # (label, rules, ctx, term, type)
F = []

def acc(label, rules, ctx, term, ty): A.append((label, rules, ctx, term, ty))
def rej(label, rule, ctx, term, ty): F.append((label, [rule], ctx, term, ty))

# universes and structural rules
acc("prop-in-type", ["axiom_P"], "", "Prop", "Type")
acc("set-in-type", ["axiom_S"], "", "Set", "Type")
acc("var-last", ["start"], "A : Set, a : A", "a", "A")
acc("var-earlier", ["weakening", "start"], "A : Set, a : A, b : A", "a", "A")
acc("prop-as-set", ["cumul_P"], "P : Prop", "P", "Set")
acc("nat-as-type", ["cumul_S", "Nat-F"], "", "Nat", "Type")
acc("prop-as-type", ["cumul_P", "cumul_S"], "P : Prop", "P", "Type")
acc("conversion-beta", ["convers", "Pi-beta"], "", "0", "(fun (A : Set) => A) Nat")
acc("hint-rewrite", ["reflection"], "f : Nat -> Nat, p : Id Nat (f 0) 0, hint p", "refl 0", "Id Nat (f 0) 0")
acc("hint-in-type", ["reflection", "convers"], "f : Nat -> Nat, p : Id Nat (f 1) 2, hint p, v : Fin 2",
    "refl (f 1)", "Id Nat 2 (f 1)")
# finite types
acc("fin-formation", ["Fin-F"], "", "Fin 3", "Set")
acc("fin-element", ["Fin-I"], "", "fin 1 3", "Fin 3")
acc("fin-elim", ["Fin-E"], "", "ind_fin {fun (k : Fin 2) => Nat} 2 0 1", "Fin 2 -> Nat")
acc("fin-beta", ["Fin-beta", "Fin-E"], "", "refl 1", "Id Nat (ind_fin {fun (k : Fin 2) => Nat} 2 0 1 (fin 1 2)) 1")
acc("fin-empty-elim", ["Fin-E", "Fin-F"], "", "ind_fin {fun (k : Fin 0) => Nat} 0", "Fin 0 -> Nat")
# naturals
acc("nat-formation", ["Nat-F"], "", "Nat", "Set")
acc("nat-zero", ["Nat-I0"], "", "0", "Nat")
acc("nat-succ", ["Nat-IS"], "", "S (S 0)", "Nat")
acc("nat-elim-add", ["Nat-E", "Pi-I"], "", "$ADD", "Nat -> Nat -> Nat")
acc("nat-beta-zero", ["Nat-beta0"], "", "refl 3", "Id Nat (ind_nat {fun (k : Nat) => Nat} 3 (fun (k r : Nat) => S r) 0) 3")
acc("nat-beta-succ", ["Nat-betaS", "Nat-beta0"], "", "refl 4", "Id Nat ($ADD 2 2) 4")
acc("nat-dependent-elim", ["Nat-E", "Id-I"], "",
    "ind_nat {fun (n : Nat) => Id Nat ($ADD 0 n) n} (refl 0) (fun (n : Nat) (ih : Id Nat ($ADD 0 n) n) => transport {fun (m : Nat) => Id Nat (S ($ADD 0 n)) (S m)} ih (refl (S ($ADD 0 n))))",
    "Pi (n : Nat), Id Nat ($ADD 0 n) n")
# Sigma
acc("sigma-formation", ["Sigma-F", "cumul_P"], "", "Sig (n : Nat), Id Nat n n", "Set")
acc("sigma-pair", ["Sigma-I"], "", "pair {Sig (n : Nat), Id Nat n 0} 0 (refl 0)", "Sig (n : Nat), Id Nat n 0")
acc("sigma-first", ["Sigma-E"], "", "ind_sig {fun (p : Nat * Nat) => Nat} (fun (a b : Nat) => a)", "Nat * Nat -> Nat")
acc("sigma-beta", ["Sigma-beta"], "", "refl 2",
    "Id Nat (ind_sig {fun (p : Nat * Nat) => Nat} (fun (a b : Nat) => a) (pair {Nat * Nat} 2 5)) 2")
acc("sigma-dependent-second", ["Sigma-E"], "B : Nat -> Set",
    "ind_sig {fun (p : Sig (x : Nat), B x) => B (ind_sig {fun (q : Sig (x : Nat), B x) => Nat} (fun (x : Nat) (y : B x) => x) p)} (fun (x : Nat) (y : B x) => y)",
    "Pi (p : Sig (x : Nat), B x), B (ind_sig {fun (q : Sig (x : Nat), B x) => Nat} (fun (x : Nat) (y : B x) => x) p)")
# Pi
acc("pi-formation", ["Pi-F"], "", "Pi (A : Set), A -> A", "Type")
acc("pi-impredicative-prop", ["Pi-F", "axiom_P"], "", "Pi (P : Prop), P -> P", "Prop")
acc("pi-identity", ["Pi-I"], "", "fun (A : Set) (a : A) => a", "Pi (A : Set), A -> A")
acc("pi-apply", ["Pi-E"], "f : Nat -> Nat", "f 0", "Nat")
acc("pi-beta", ["Pi-beta"], "", "refl 0", "Id Nat ((fun (x : Nat) => x) 0) 0")
# W
acc("w-formation", ["W-F"], "", "$WNAT", "Set")
acc("w-leaf", ["W-I", "Fin-beta"], "", "$WZERO", "$WNAT")
acc("w-node", ["W-I"], "", "$WONE", "$WNAT")
acc("w-elim", ["W-E"], "", "$TONAT", "$WNAT -> Nat")
acc("w-beta", ["W-beta", "Fin-beta"], "", "refl 1", "Id Nat ($TONAT $WONE) 1")
# identity
acc("id-formation", ["Id-F"], "", "Id Nat 0 0", "Prop")
acc("id-refl", ["Id-I"], "", "refl 0", "Id Nat 0 0")
acc("id-elim-symmetry", ["Id-E"], "", "$SYM", "Pi (x y : Nat), Id Nat x y -> Id Nat y x")
acc("id-beta", ["Id-beta"], "", "refl (refl 0)", "Id (Id Nat 0 0) ($SYM 0 0 (refl 0)) (refl 0)")
acc("transport", ["Id-E"], "A : Set, P : A -> Set, a : A, b : A, e : Id A a b, u : P a",
    "transport {fun (x : A) => P x} e u", "P b")
acc("uip-witness", ["Trunc-E", "reflection"], "",
    "ind_trunc {fun (t : Trunc Nat) => Id Nat 0 0} (fun (x : Nat) => refl 0) (fun (t : Trunc Nat) (c c' : Id Nat 0 0) => refl c)",
    "Trunc Nat -> Id Nat 0 0")
# truncation
acc("trunc-formation", ["Trunc-F"], "", "Trunc Nat", "Prop")
acc("trunc-intro", ["Trunc-I"], "", "tr 0", "Trunc Nat")
acc("trunc-elim-unit", ["Trunc-E", "Fin-E"], "",
    "ind_trunc {fun (t : Trunc Nat) => Fin 1} (fun (x : Nat) => fin 0 1) $UNITH", "Trunc Nat -> Fin 1")
acc("trunc-beta", ["Trunc-beta"], "", "refl (fin 0 1)",
    "Id (Fin 1) (ind_trunc {fun (t : Trunc Nat) => Fin 1} (fun (x : Nat) => fin 0 1) $UNITH (tr 7)) (fin 0 1)")
# quotients
acc("quot-formation", ["Quot-F"], "", "$QPAR", "Set")
acc("quot-class", ["Quot-I"], "", "cls {$QTOP} 3", "$QTOP")
acc("quot-axiom", ["Quot-I="], "", "ax {$QTOP}",
    "Pi (a b : Nat), $RTOP a b -> Id $QTOP (cls {$QTOP} a) (cls {$QTOP} b)")
acc("quot-elim-constant", ["Quot-E", "reflection"], "",
    "ind_quot {fun (q : $QTOP) => Nat} (fun (x : Nat) => 0) $QTOPH", "$QTOP -> Nat")
acc("quot-elim-parity", ["Quot-E"], "", "ind_quot {fun (q : $QPAR) => Nat} $PAR $PARH", "$QPAR -> Nat")
acc("quot-beta", ["Quot-beta"], "", "refl 1",
    "Id Nat (ind_quot {fun (q : $QPAR) => Nat} $PAR $PARH (cls {$QPAR} 5)) 1")
# propext
acc("propext-type", ["propext"], "", "propext", "Pi (P Q : Prop), (P -> Q) * (Q -> P) -> Id Prop P Q")
acc("propext-use", ["propext", "Sigma-I"], "P : Prop, Q : Prop, f : P -> Q, g : Q -> P",
    "propext P Q (pair {(P -> Q) * (Q -> P)} f g)", "Id Prop P Q")
# Church naturals
acc("church-two", ["Pi-I", "Pi-E"], "", "fun (C : Prop) (c : C) (f : C -> C) => f (f c)", "$NATC")
acc("church-weak-rec", ["Pi-E"], "C : Prop, c : C, f : C -> C", "fun (n : $NATC) => n C c f", "$NATC -> C")
acc("church-rec-two", ["Pi-beta"], "C : Prop, c : C, f : C -> C",
    "refl (f (f c))", "Id C ((fun (n : $NATC) => n C c f) (fun (D : Prop) (d : D) (g : D -> D) => g (g d))) (f (f c))")

# rejections
rej("prop-in-prop", "axiom_P", "", "Prop", "Prop")
rej("type-untyped", "axiom_S", "", "Type", "Type")
rej("set-not-prop", "cumul_P", "", "Nat", "Prop")
rej("power-of-prop-not-set", "cumul_S", "", "Prop -> Prop", "Set")
rej("context-not-type", "start", "x : 0", "0", "Nat")
rej("mismatch", "convers", "", "0", "Fin 1")
rej("hint-not-equation", "reflection", "hint 0", "0", "Nat")
rej("fin-out-of-range", "Fin-I", "", "fin 3 3", "Fin 3")
rej("fin-motive-domain", "Fin-E", "", "ind_fin {fun (k : Fin 2) => Nat} 1 0", "Fin 1 -> Nat")
rej("fin-case-type", "Fin-E", "", "ind_fin {fun (k : Fin 2) => Nat} 2 0 (fin 0 1)", "Fin 2 -> Nat")
rej("succ-of-fin", "Nat-IS", "", "S (fin 0 1)", "Nat")
rej("nat-base-type", "Nat-E", "", "ind_nat {fun (k : Nat) => Nat} (fin 0 1) (fun (k r : Nat) => r)", "Nat -> Nat")
rej("sigma-formation-body", "Sigma-F", "", "Sig (x : Nat), 0", "Set")
rej("sigma-pair-second", "Sigma-I", "", "pair {Nat * Nat} 0 (fin 0 1)", "Nat * Nat")
rej("sigma-motive", "Sigma-E", "", "ind_sig {fun (p : Nat) => Nat} (fun (a : Nat) => a)", "Nat -> Nat")
rej("pi-domain", "Pi-F", "", "Pi (x : 0), Nat", "Set")
rej("lambda-domain", "Pi-I", "", "fun (x : 0) => x", "Nat")
rej("apply-non-function", "Pi-E", "", "0 0", "Nat")
rej("apply-wrong-argument", "Pi-E", "f : Nat -> Nat", "f (fin 0 1)", "Nat")
rej("w-formation-domain", "W-F", "", "W (x : 0), Nat", "Set")
rej("w-tree-label", "W-I", "", "tree {$WNAT} 0 (ind_fin {fun (k : Fin 0) => $WNAT} 0)", "$WNAT")
rej("w-elim-step", "W-E", "", "ind_w {fun (t : $WNAT) => Nat} (fun (a : Fin 2) => 0)", "$WNAT -> Nat")
rej("id-sides", "Id-F", "", "Id Nat 0 (fin 0 1)", "Prop")
rej("id-motive-binder", "Id-E", "", "ind_id {fun (x y : Nat) (e : Nat) => Nat} (fun (x : Nat) => x)", "Nat")
rej("transport-non-path", "Id-E", "A : Set, P : A -> Set, a : A, u : P a", "transport {fun (x : A) => P x} a u", "P a")
rej("trunc-of-term", "Trunc-F", "", "Trunc 0", "Prop")
rej("trunc-nat-not-hprop", "Trunc-E", "",
    "ind_trunc {fun (t : Trunc Nat) => Nat} (fun (x : Nat) => x) (fun (t : Trunc Nat) (c c' : Nat) => refl c)", "Trunc Nat -> Nat")
rej("quot-relation", "Quot-F", "", "Quot Nat (fun (x : Nat) => x)", "Set")
rej("quot-class-element", "Quot-I", "", "cls {$QTOP} (fin 0 1)", "$QTOP")
rej("quot-axiom-annotation", "Quot-I=", "", "ax {Nat}", "Nat")
rej("quot-respect-missing", "Quot-E", "",
    "ind_quot {fun (q : $QTOP) => Nat} (fun (x : Nat) => x) $QTOPH", "$QTOP -> Nat")
rej("church-dependent-motive", "Pi-E", "P : $NATC -> Prop",
    "fun (n : $NATC) => n (fun (m : $NATC) => P m)", "$NATC -> Prop")
rej("church-large-elim", "Pi-E", "", "fun (n : $NATC) => n Nat 0 (fun (k : Nat) => S k)", "$NATC -> Nat")

out = ["# Golden judgments for the type checker.",
       "# assert-type <label> [rules the derivation must use] : <ctx> |- <term> : <type>",
       "# assert-fail <label> [rule that must reject] : <ctx> |- <term> : <type>", ""]
for (l, r, c, t, ty) in A:
    out.append("assert-type %s [%s] : %s |- %s : %s" % (l, ", ".join(r), ex(c), ex(t), ex(ty)))
out.append("")
for (l, r, c, t, ty) in F:
    out.append("assert-fail %s [%s] : %s |- %s : %s" % (l, ", ".join(r), ex(c), ex(t), ex(ty)))
import os
open(os.path.join(os.path.dirname(os.path.abspath(__file__)), 'rules.judg'), 'w').write("\n".join(out) + "\n")
print(len(A), len(F))
