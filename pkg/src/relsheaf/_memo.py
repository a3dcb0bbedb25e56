def memoized(obj, key, compute):
    """Cache ``compute()`` on ``obj`` so functors return the same object per input.

    Carriers are compared by identity, so functor images must be unique.
    """
    store = obj.__dict__.setdefault("_memo", {})
    try:
        return store[key]
    except KeyError:
        value = store[key] = compute()
        return value
