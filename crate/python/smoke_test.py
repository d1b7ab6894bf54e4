"""Smoke test for the stringnet Python extension.

Build and install it with

    pip install --no-build-isolation -e crates/python

then run ``python python/smoke_test.py``.
"""

import stringnet as sn


def main():
    assert sn.sn_closed_dim(2, 3) == 64
    assert sn.sn_closed_dim(3, 2) == 0
    assert [sn.sphere_sn_dim(r) for r in range(1, 5)] == [1, 1, 0, 0]
    assert sn.count_rspin(1, 3) == 9

    z = sn.CycNum.root_of_unity(3, 1)
    assert z ** 3 == sn.CycNum.from_int(1)
    assert z + z * z == sn.CycNum.from_int(-1)
    assert abs(complex(z) - complex(-0.5, 3 ** 0.5 / 2)) < 1e-12
    assert sn.CycNum.from_json(z.to_json()) == z

    report = sn.tilde_bp_operator(2, 1)
    assert report["image_rank"] == 4

    vectors = [sn.torus_vector(3, a, k) for a, k in sn.centre_simples(3)]
    assert sn.rank(3, vectors) == 9

    markings = sn.enumerate_admissible(3, genus=1)
    assert len(markings) == 9
    images = []
    for m in markings:
        indices = [m["indices"][e] for e in sorted(m["indices"], key=int)]
        assert sn.check_admissible(3, 1, indices)["admissible"]
        images.append(sn.sigma_f_vector(3, 1, indices))
    assert sn.rank(3, images) == 9

    frob = sn.frobenius_check(4)
    assert all(a["holds"] for a in frob["axioms"])
    assert frob["nakayama_diagonal"][1] == sn.CycNum.root_of_unity(4, -1)

    z3 = sn.ModularData.sample("z3")
    assert z3.violations() == []
    assert z3.charge_support("1") == [("2", "1")]
    assert not z3.is_spherical("1")
    semion = sn.ModularData.sample("semion")
    assert semion.sphere_charge_dim("s", "1", "1") == 1

    try:
        sn.sn_closed_dim(0, 1)
    except sn.StringnetError:
        pass
    else:
        raise AssertionError("r = 0 must be rejected")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
