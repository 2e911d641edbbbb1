from sklearn.metrics import adjusted_rand_score


def adjusted_agreement(partition_a, partition_b):
    """
    Adjusted Rand index between two partitions of the same nodes: 1 for identical partitions,
    around 0 for independent ones.
    :param partition_a: Partition or dict node -> community.
    :param partition_b: Partition or dict node -> community.
    :return: float
    """
    a = getattr(partition_a, "assignment", partition_a)
    b = getattr(partition_b, "assignment", partition_b)
    if set(a) != set(b):
        raise ValueError("Partitions cover different nodes")
    nodes = sorted(a)
    if len(nodes) < 2:
        return 1.0
    return float(adjusted_rand_score([a[x] for x in nodes], [b[x] for x in nodes]))
