"""The two infinite families of excluded minors, on small parameters.

Run with:  python demos/families.py
"""

from baseorder.families import (
    AlphaTuple,
    BetaTuple,
    alpha_tuples,
    beta_class_formula,
    beta_deletion_report,
    beta_tuples,
    build_m_alpha,
    count_beta_classes,
    verify_alpha_theorem,
    verify_beta_theorem,
)
from baseorder.structure import is_transversal

print("alpha family (six blocks A..F, rank r):")
for r in (3, 4, 5):
    for t in alpha_tuples(r):
        rep = verify_alpha_theorem(t)
        print(f"  r={r} {t.sizes()}  excluded minor for {sorted(rep['excluded_minor'])}: "
              f"{all(rep['excluded_minor'].values())}  antichain slack {rep['slack_all_four']}")

m = build_m_alpha(AlphaTuple(2, 1, 2, 2, 1, 2))
print("deleting a1 from (2,1,2,2,1,2) leaves a transversal matroid:",
      is_transversal(m.delete(m.mask(["a1"]))))

print("\nbeta family ((k-1)-BO but not k-BO), k = 2 and 3:")
for k in (2, 3):
    for t in beta_tuples(k):
        rep = verify_beta_theorem(t)
        print(f"  k={k} {t.sizes()}  not {k}-BO: {rep['not_k_bo']}  "
              f"{k - 1}-BO: {rep['k_minus_1_bo']}  failing pairs: {rep['failing_pairs']}  "
              f"all checks: {rep['ok']}")

print("\nnon-isomorphic beta matroids per k:")
for k in range(2, 10):
    print(f"  k={k}: {count_beta_classes(k, check_isomorphism_up_to=0)} "
          f"(closed form {beta_class_formula(k)})")

rep = beta_deletion_report(BetaTuple(5, 2, 3, 2, 3), "c1")
print("\nk=5, sizes (2,3,2,3), delete c1: transversal", rep["transversal"],
      " cotransversal", rep["cotransversal"])
