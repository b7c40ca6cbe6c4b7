import os
from setuptools import setup, find_packages

__package_name__ = "invsg"
__package_version__ = "0.1.0"

invsg_root = os.path.abspath(os.path.dirname(__file__))
with open(os.path.join(invsg_root, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

optional_dependencies = {
    'test': [
        'testflo',
        'parameterized'
    ],
    'docs': [
        'sphinx',
        'numpydoc'
    ]
}
# Add an optional dependency that concatenates all others
optional_dependencies['all'] = sorted([
    dependency
    for dependencies in optional_dependencies.values()
    for dependency in dependencies
])

setup(
    name=__package_name__,
    version=__package_version__,
    description=("Finite inverse semigroups: Green's relations, Munn semigroups,"
        " subsemigroup lattices and partial automorphism monoids"),
    long_description=long_description,
    long_description_content_type='text/markdown',
    author="",
    author_email="",
    zip_safe=False,
    packages = find_packages(exclude=['tests', 'tests.*']),
    package_data={'invsg': ['examples/*.slt', 'examples/*.sgp']},
    install_requires=[
          'numpy',
          'openmdao >= 3.25, != 3.27.0'
    ],
    extras_require=optional_dependencies,
    entry_points={
        'console_scripts': ['invsg=invsg.cli:main'],
    },
)
