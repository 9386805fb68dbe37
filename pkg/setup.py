from os import path
from setuptools import find_packages, setup

here = path.abspath(path.dirname(__file__))

# Get the long description from the relevant file
with open(path.join(here, 'README.md')) as f:
    long_description = f.read()

setup(
    name='linkedgrass',
    packages=find_packages(exclude=['tests', 'tests.*']),
    version=open(path.join(here, 'VERSION')).read().strip(),
    description='Linked Grassmannians, quiver Grassmannians and limit linear series over a discrete valuation ring',
    long_description=long_description,
    long_description_content_type='text/markdown',
    python_requires='>=3.8',
    install_requires=[
        'fs',
        'numpy>=1.17',
        'networkx>=2.4',
        'sympy>=1.6',
    ],
    entry_points={
        'console_scripts': ['linkedgrass = linkedgrass.cli:run'],
    },
    package_data={}
)
