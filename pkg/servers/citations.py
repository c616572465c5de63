H2_LATTICE = 'Sec. 3: "H^2(X,Z) = U^3 + E_8(-1) + E_8(-1)"'
SWAP_ACTION = 'Sec. 3: "i^*(u,x,y)=(u,y,x)"'
INVARIANT_SUBLATTICE = 'Sec. 3: "The invariant sublattice is H^2(X,Z)^i = U^3 + E_8(-2)"'
ANTI_INVARIANT = 'Sec. 3: "(H^2(X,Z)^i)^perp = E_8(-2)"'
NIKULIN_RANK = 'Sec. 3: "A K3 surface X with a Nikulin involution has rank rho(X) >= 9"'
PICARD_RANGE = 'Sec. 3: "1 <= rho <= 20"'
BETTI = 'Sec. 3: "dim H^2(X) = b_2(X) =22"'
EVEN_SETS = 'Sec. 3: "by [N 1], k =0,8,16"'
KUMMER_EVEN_SET = 'Sec. 3: "t_2(A) = t_2(X) = t_2(Y)"'
LEMMA_2 = 'Lemma 2: "e(X) +t +2 +2k = 2e(Y)"'
LEMMA_2_TRACE = 'Lemma 2: "Therefore rho(X) =rho(Y) and t=6"'
THEOREM_3_TRACE = 'Theorem 3 proof: "the trace of the action of i on NS(X) (x) C equals rho-16"'
THEOREM_3_DECOMPOSITION = 'Theorem 3 proof: "h(X) = 1 + h^alg_2(X) + t_2(X) + L^2 = 1 + L^rho + t_2(X) + L^2"'
THEOREM_3_BLOWUP = 'Theorem 3 proof: "h(X~) = ... = h(X) + L^(+8)"'
THEOREM_3_KIMURA = 'Theorem 3 proof: "By [Ki 7.3] N=0"'

THEOREM_1 = 'Theorem 1: "t_2(Y) =0 <=> v(Gamma_sigma) =1"'
REMARK_1 = 'Remark 1: "the correspondence Delta_X has 2 different valences"'
DEFINITION_1_COMPOSE = 'Definition 1: "v(T o T\') =-v(T) . v(T\')"'
DEFINITION_1_PROJECTOR = 'Definition 1: "if p is a projector ... then v(p) is either 0 or -1"'
PROPOSITION_1_SQUARE = 'Proposition 1: "(alpha)^2 =[xi]"'
PROPOSITION_1_PUSH = 'Proposition 1(i): "f_*([xi]) = f_*(alpha) = 2 [eta]"'
PROPOSITION_1_PULL = 'Proposition 1(ii): "f^*([eta]) = [xi] +alpha"'
COROLLARY_1 = 'Corollary 1: "(i) theta : t_2(X) -> t_2(Y) is the projection onto a direct summand"'
THEOREM_4_PROOF = 'Theorem 4 proof: "v(1/2 (Delta_X -(1 x i)Delta_X))= 0"'
KLEIN_FOUR = 'Sec. 4(i): "bar i([xi]) equals bar sigma([xi]) o bar j([xi]) = (-[xi]) o (-[xi]) = [xi]"'

THEOREM_2 = 'Theorem 2: "the motive h(X) in M_rat(C) is finite dimensional"'
THEOREM_3 = 'Theorem 3: "then h(X) = h(Y)"'
THEOREM_4 = 'Theorem 4: "i acts as the identity on A_0(X)_0"'
THEOREM_5 = 'Theorem 5: "where F_n in P^3 is the Fermat surface"'
COROLLARY_2 = 'Corollary 2: "rho(X) = 2, 4, 6, 10, 12, 16, 18, 20."'
REMARK_3 = 'Remark 3: "the quotient surface Y=X/<sigma> is an Enriques surface"'
THEOREM_7 = 'Theorem 7: "theta : t_2(X) -> t_2(Y)" (isomorphism)'
THREE_QUADRICS = 'Sec. 4(iii): "i acts trivially on A_0(X)"'
K3_INVARIANTS = 'Sec. 3: "A smooth projective K3 surface X over C is a regular surface (i.e q(X)=0)"'

THEOREM_6 = 'Theorem 6: "Lambda_2d =Z L + E_8(-2)"'
THEOREM_6_ODD = 'Theorem 6: "if L^2 = 2 mod 4, we have Lambda_2d=NS(X)"'
THEOREM_6_EVEN = 'Theorem 6: "If L^2 = 0 mod 4 we have either NS(X) = Lambda_2d or NS(X) = Lambda_2d-bar"'
THEOREM_6_PRIMITIVE = 'Theorem 6: "such that E_8(-2) is a primitive sublattice"'
GLUE_CASE_II = 'Sec. 4(ii): "E_1 = (L+v)/2, with v in E_8(-2), such that v^2 =-4"'
PENCILS_CASE_II = 'Sec. 4(ii): "E_1 and E_2, where E_2 =(L-v)/2, are the classes of 2 elliptic fibrations"'

WEIERSTRASS = 'Theorem 7 proof: "X : y^2=x(x^2+a(t)x +b(t))"'
I1_FIBERS = 'Theorem 7 proof: "8 singular fibers of type I_1 ... zeroes {a_1,...,a_8} of a^2(t) - 4b(t)"'
I2_FIBERS = 'Theorem 7 proof: "8 singular fibers of type I_2 ... zeroes {b_1,...,b_8} of b(t)"'
QUOTIENT_PRINTED = 'Theorem 7 proof: "Y : y^2 = x(x^2- 2a(t)x+9a(t)^2-4b(t)"'
FIXED_NODES = 'Theorem 7 proof: "The fixed points of the translation by tau are the 8 nodes in the I_1-fibers"'
REMARK_4 = 'Remark 4: "NS(X) has rank rho(X)=10, and dim T_X,Q=12 is even"'
