"""End-to-end smoke tests for the Python bindings."""

import valleys


def make_pool(planes_per_dim=4, d=2):
    cfg = valleys.LearnerConfig()
    domain = valleys.benchmark_domain(d, 1.0)
    return valleys.init_grid(domain, planes_per_dim, cfg)


def test_grid_pool_shape():
    pool = make_pool()
    assert len(pool) == 8
    thetas = sorted(p.theta for p in pool.planes if p.w[0] == 1.0)
    assert thetas == [3.0, 9.0, 15.0, 21.0]


def test_output_code_clips():
    pool = make_pool()
    code = valleys.output_code(pool, [4.0, 0.0])
    assert len(code) == 8
    assert all(c >= 0.0 for c in code)


def test_train_and_classify_two_pair_2d():
    spec = valleys.two_pair_2d(1.0)
    samples = valleys.gen_mixture(spec, 3000, 7)
    pool = make_pool()
    valleys.train(pool, [s.x for s in samples])
    assert pool.diag.samples_processed == 3000
    assert pool.diag.shifts_fired > 0

    calib = valleys.gen_mixture(spec, 400, 8)
    heads = valleys.associate_labels(pool, calib)
    assert len(heads.heads) == 4
    labels = valleys.classify_topn(heads, pool, calib[0].x, 4)
    assert sorted(labels) == [0, 1, 2, 3]


def test_snapshot_roundtrip_exact():
    pool = make_pool()
    spec = valleys.two_pair_2d(1.0)
    valleys.train(pool, [s.x for s in valleys.gen_mixture(spec, 500, 3)])
    text = valleys.pool_to_json(pool)
    back = valleys.pool_from_json(text)
    assert valleys.pool_to_json(back) == text


def test_determinism():
    spec = valleys.two_pair_2d(1.0)
    a = valleys.gen_mixture(spec, 100, 42)
    b = valleys.gen_mixture(spec, 100, 42)
    assert all(sa.x == sb.x and sa.label == sb.label for sa, sb in zip(a, b))


def test_bayes_error_near_two_percent():
    err = valleys.bayes_error_mc(valleys.two_pair_2d(1.0), 100000, 5)
    assert abs(err - 0.02) < 0.005


def test_knn_and_kmeans():
    spec = valleys.two_pair_2d(1.0)
    train = valleys.gen_mixture(spec, 400, 1)
    model = valleys.KnnModel(train, k=5)
    top1 = valleys.knn_classify(model, train[0].x, 1)
    assert top1[0] == train[0].label

    km = valleys.kmeans_fit([s.x for s in train], 4, 100, 2)
    assert km.k == 4
    assert km.inertia > 0.0
