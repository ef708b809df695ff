import os
from pathlib import Path

print('CWD:', Path.cwd())
try:
    import catalog
    from config import get_settings
    db_path = get_settings().db_path
    print('DB_PATH:', db_path)
    print('DB exists before init?', Path(db_path).exists())
    catalog.init_db()
    print('DB exists after init?', Path(db_path).exists())
except Exception as e:
    print('DB test error:', repr(e))

print('\nSettings env check:')
print('CONDORCET_SLOW_TESTS set?', bool(os.getenv('CONDORCET_SLOW_TESTS')))
try:
    from fishburn import phi
    print('Phi(3..6):', [phi(n) for n in range(3, 7)])
    print('Phi(21):', phi(21))
except Exception as e:
    print('fishburn error:', repr(e))

try:
    import render
    from fishburn import fishburn_tiling
    svg = render.render_tiling(fishburn_tiling(4))
    print('Rendered n=4 tiling:', len(svg), 'bytes of SVG')
except Exception as e:
    print('render error:', repr(e))

print('\nSmoke test complete.')
