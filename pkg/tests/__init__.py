
_test_modules = {}


def get_config():
    """Lazy import config module."""
    if 'get_config' not in _test_modules:
        from config import get_config
        _test_modules['get_config'] = get_config
    return _test_modules['get_config']


def update_config(val):
    """Lazy import config module."""
    if 'update_config' not in _test_modules:
        from config import update_config
        _test_modules['update_config'] = update_config
    return _test_modules['update_config'](val)


def get_pipeline():
    """Lazy import pipeline module."""
    if 'pipeline' not in _test_modules:
        import pipeline
        _test_modules['pipeline'] = pipeline
    return _test_modules['pipeline']


def get_app():
    """Lazy import of the FastAPI application."""
    if 'app' not in _test_modules:
        from app import app
        _test_modules['app'] = app
    return _test_modules['app']
