import switchgraph


def pytest_report_header(config):
    return f"switchgraph kernel backend: {switchgraph.backend_name()}"
