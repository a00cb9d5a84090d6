from setuptools import find_packages, setup

with open('README.md') as f:
    readme = f.read()

setup(
    name='biharmonica',
    version='0.1.0',
    entry_points={
        'console_scripts': [
            'biharmonica = biharmonica.main:main',
        ],
    },
    install_requires=['numpy', 'scipy', 'humanize'],
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    include_package_data=True,
    package_data={
        'biharmonica': ['data/*.json'],
    },
    description='Numerical verification of biharmonic surfaces in homogeneous 3-manifolds.',
    long_description=readme,
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=['tests']),
    python_requires='>=3.8',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
